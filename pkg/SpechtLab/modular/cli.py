"""
In-process entry point for the ``specht`` management command.

``run`` returns the exit code instead of leaving the interpreter, which is what
the tests and ``sample_code.py`` use.
"""
import sys

from .management.commands.specht import Command


def run(argv, stdout=None, stderr=None) -> int:
    command = Command(stdout=stdout or sys.stdout, stderr=stderr or sys.stderr)
    try:
        command.run_from_argv(['manage.py', 'specht', *argv])
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    return 0
