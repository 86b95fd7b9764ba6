import os
import sys
from io import StringIO
from pathlib import Path

import django

sys.path.insert(0, str(Path(__file__).resolve().parent / "SpechtLab"))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "spechtlab.settings")
django.setup()

from modular.cli import run  # noqa: E402
from modular.condition1 import certificate, theorem1_bound  # noqa: E402
from modular.exceptions import SingularPartitionError  # noqa: E402
from modular.updown import up, verify_radical_identities, verify_updown_laws  # noqa: E402
from modular.wordspace import dim_irreducible, specht_module  # noqa: E402


def show_specht_dimensions(n, p, shapes):
    """
    Builds Specht modules inside the word space and prints their dimensions.

    Parameters:
        n (int): Number of letters; every shape must have at most n parts.
        p (int): The characteristic, a prime.
        shapes (list[tuple]): Partitions to build, e.g. [(2, 1), (3, 1)].

    Behavior:
        - Builds S^shape as the span of the column bracket products.
        - Computes D^shape as S^shape modulo its Gram radical.
        - Prints both dimensions, or a warning when the shape is not p-regular.

    Returns:
        None

    Example:
        show_specht_dimensions(2, 3, [(2, 1), (2, 2)])
    """
    for shape in shapes:
        module = specht_module(shape, n, p)
        try:
            top = dim_irreducible(shape, n, p)
        except SingularPartitionError:
            top = None
        if top is None:
            print(f"⚠️ S^{shape}: dim {module.dim}, not {p}-regular")
        else:
            print(f"✅ S^{shape}: dim {module.dim}, D^{shape}: dim {top}")


def show_up_and_down(shape, n, p):
    """
    Applies the induction operator to a Specht module and checks the up/down laws.

    Parameters:
        shape (tuple): The starting partition.
        n (int): Number of letters.
        p (int): The characteristic.

    Returns:
        bool: True when every law holds.
    """
    module = specht_module(shape, n, p)
    raised = up(module)
    print(f"✅ S^{shape} (dim {module.dim}) goes up to a module of dim {raised.dim} in rank {raised.r}")
    report = verify_updown_laws(module)
    print(f"{'✅' if report.passed else '❌'} up/down laws: {report.dims}")
    return report.passed


def show_radical_identity(shape, n, p):
    """
    Compares P^shape with the radical one column lower, going down and back up.

    Returns:
        bool: True when both identities hold.
    """
    report = verify_radical_identities(shape, n, p, check_induction=True)
    print(
        f"{'✅' if report.passed else '❌'} P^{shape} down = P^({report.lowered_shape}): "
        f"{report.restriction_holds}, back up: {report.induction_holds}"
    )
    return report.passed


def show_certificate(shape, n, p):
    """
    Prints the Condition 1 certificate of a partition and the resulting lower bound.

    Example:
        show_certificate((3, 1), 2, 2)
    """
    cert = certificate(shape, n, p)
    bound = theorem1_bound(sum(shape), n, cert.a)
    print(f"✅ {cert.as_dict()} -> k >= {bound}")


def run_command(*argv):
    """
    Runs ``manage.py specht`` in-process and prints its report.

    Parameters:
        *argv (str): Subcommand and flags, e.g. "bound", "--r", "5", "--n", "2", "--a", "2".

    Returns:
        int: The exit code (0 passed, 1 failed verification, 2 usage or input error).
    """
    stdout, stderr = StringIO(), StringIO()
    code = run(list(argv), stdout=stdout, stderr=stderr)
    if code == 0:
        print(stdout.getvalue(), end="")
    else:
        print(f"❌ exit {code}: {stderr.getvalue().strip()}")
    return code


if __name__ == "__main__":

    show_specht_dimensions(2, 3, [(2, 1), (3, 1), (2, 2)])

    show_up_and_down((2, 1), 2, 2)

    show_radical_identity((3, 3), 2, 3)

    show_certificate((3, 1), 2, 2)
    show_certificate((3, 2), 2, 5)

    run_command("bound", "--r", "5", "--n", "2", "--a", "2", "--format", "text")
    run_command("lemma1-sweep", "--p", "5", "--n", "2", "--format", "csv")
