import logging
import time

from django.core.management.base import BaseCommand, CommandError

from modular import serializers as inputs
from modular.condition1 import (
    Route, certificate, invariant_preserved, lemma1_sweep, theorem1_bound, theorem2_applies,
)
from modular.exceptions import InvalidPartitionError, RegionError, SpechtError
from modular.partitions import count_standard_tableaux, shift
from modular.reports import build_report, render
from modular.schurweyl import kernel_ideal_check
from modular.store import ModuleStore
from modular.suite import run_suite, suite_outputs
from modular.updown import (
    down, radical, specht, up_chain, verify_radical_chain, verify_radical_identities,
    verify_updown_laws,
)
from modular.wordspace import GModule

logger = logging.getLogger('modular')

FLAGS = {
    'shape': ('--lambda', {'dest': 'shape', 'metavar': 'PARTS', 'help': 'Partition, e.g. "3,1"'}),
    'n': ('--n', {'help': 'Number of letters (rank of GL_n)'}),
    'p': ('--p', {'help': 'Characteristic, a prime'}),
    'r': ('--r', {'help': 'Word length'}),
    'k': ('--k', {'help': 'Exponent k of the floor p^k - 1'}),
    'm_max': ('--m-max', {'help': 'Largest m = lambda_1 - lambda_2 to sweep'}),
    'a': ('--a', {'help': 'Condition 1 threshold a'}),
    'module': ('--module', {'help': 'Source module: specht, radical or zero'}),
    'steps': ('--steps', {'help': 'Number of up/down steps, or chain length'}),
    'route': ('--route', {'help': 'Certificate route: auto, alcove or two-part'}),
    'r_start': ('--r-start', {'help': 'First R of the sweep'}),
    'r_stop': ('--r-stop', {'help': 'Last R of the sweep'}),
    'profile': ('--profile', {'help': 'quick or full'}),
    'jobs': ('--jobs', {'help': 'Checks run in parallel'}),
}

SUBCOMMANDS = {
    'dim-specht': (inputs.ShapeInputSerializer, 'Dimension of S^lambda against the hook formula'),
    'dim-irreducible': (inputs.ShapeInputSerializer, 'Dimension of D^lambda = S^lambda / P^lambda'),
    'radical': (inputs.ShapeInputSerializer, 'The Gram radical P^lambda'),
    'up': (inputs.ModuleInputSerializer, 'Iterated induction U(up)^t'),
    'down': (inputs.ModuleInputSerializer, 'Iterated restriction V(down)^t'),
    'verify-updown': (inputs.ModuleInputSerializer, 'U(down)(up) <= U <= U(up)(down), U(down)(up)(down) = U(down)'),
    'verify-eq3': (inputs.ChainInputSerializer, 'P^(lambda - 1^n)(up) = P^lambda, or a chain of them'),
    'verify-down-radical': (inputs.ShapeInputSerializer, 'P^nu(down) = P^(nu - 1^n)'),
    'schur-weyl-kernel': (inputs.RankInputSerializer, 'Ker sigma_r against the alternating ideal'),
    'condition1': (inputs.ConditionOneInputSerializer, 'Condition 1 certificate and its sweep'),
    'lemma1-sweep': (inputs.LemmaOneInputSerializer, 'No degenerate partition of R lies in C0(R)'),
    'delta-sweep': (inputs.DeltaSweepInputSerializer, 'The two-part invariant m >= p^k - 1'),
    'bound': (inputs.BoundInputSerializer, 'Smallest k >= r^2/n + (2r+1)a + a^2 n'),
    'suite': (inputs.SuiteInputSerializer, 'Run the acceptance battery'),
}


class Command(BaseCommand):
    help = 'Modular Specht module computations and verifications.'
    requires_system_checks = []

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='action', metavar='SUBCOMMAND', required=True)
        for name, (serializer_class, help_text) in SUBCOMMANDS.items():
            sub = subparsers.add_parser(name, help=help_text, description=help_text)
            for field in serializer_class().fields:
                flag, kwargs = FLAGS[field]
                sub.add_argument(flag, **kwargs)
            sub.add_argument('--format', choices=['json', 'csv', 'text'], default='json')
            sub.add_argument('--timing', action='store_true', help='Add elapsed time to the report')
            sub.add_argument('--cache-dir', help='Directory for cached modules')
            sub.add_argument('--override-guard', action='store_true',
                             help='Allow word spaces beyond SPECHT_WORD_LIMIT')

    def handle(self, *args, **options):
        action = options['action']
        serializer_class, _ = SUBCOMMANDS[action]
        raw = {field: options[field] for field in serializer_class().fields if options.get(field) is not None}
        serializer = serializer_class(data=raw)
        if not serializer.is_valid():
            raise CommandError(_format_errors(serializer.errors), returncode=2)

        self.override_guard = options['override_guard']
        self.store = ModuleStore(options['cache_dir'])
        started = time.perf_counter()
        logger.info('specht %s started', action)
        try:
            parameters, outputs, passed = getattr(self, 'do_' + action.replace('-', '_'))(
                serializer.validated_data
            )
        except SpechtError as exc:
            raise CommandError(str(exc), returncode=2) from exc
        elapsed = time.perf_counter() - started
        logger.info('specht %s finished in %.3fs', action, elapsed)

        report = build_report(
            action, parameters, dict(serializer.data), outputs, passed,
            elapsed if options['timing'] else None,
        )
        self.stdout.write(render(report, options['format']), ending='')
        if not passed:
            raise CommandError(f'{action} failed', returncode=1)

    def _module(self, data) -> GModule:
        lam, n, p = data['shape'], data['n'], data['p']
        if data['module'] == 'zero':
            return GModule.zero(lam.size, n, p)
        build = radical if data['module'] == 'radical' else specht
        return build(lam, n, p, self.store, self.override_guard)

    def do_dim_specht(self, data):
        lam, n, p = data['shape'], data['n'], data['p']
        module = specht(lam, n, p, self.store, self.override_guard)
        expected = count_standard_tableaux(lam)
        outputs = {'dim': module.dim, 'standard_tableaux': expected}
        return {'n': n, 'r': lam.size, 'p': p}, outputs, module.dim == expected

    def do_dim_irreducible(self, data):
        lam, n, p = data['shape'], data['n'], data['p']
        top = radical(lam, n, p, self.store, self.override_guard)
        whole = specht(lam, n, p, self.store, self.override_guard)
        outputs = {'dim': whole.dim - top.dim, 'dim_specht': whole.dim, 'dim_radical': top.dim}
        return {'n': n, 'r': lam.size, 'p': p}, outputs, True

    def do_radical(self, data):
        lam, n, p = data['shape'], data['n'], data['p']
        whole = specht(lam, n, p, self.store, self.override_guard)
        module = radical(lam, n, p, self.store, self.override_guard)
        outputs = {
            'dim_radical': module.dim,
            'dim_specht': whole.dim,
            'contained': whole.contains(module),
            'closed': module.is_closed(),
        }
        return {'n': n, 'r': lam.size, 'p': p}, outputs, outputs['contained'] and outputs['closed']

    def do_up(self, data):
        lam, n, p, steps = data['shape'], data['n'], data['p'], data['steps']
        source = self._module(data)
        chain = up_chain(source, steps, self.override_guard)
        target = specht(shift(lam, steps, n), n, p, self.store, self.override_guard)
        contained = target.contains(chain[-1])
        outputs = {
            'rows': [{'step': 0, 'r': source.r, 'dim': source.dim}]
            + [{'step': k, 'r': module.r, 'dim': module.dim} for k, module in enumerate(chain, start=1)],
            'dim': chain[-1].dim,
            'within_specht': contained,
        }
        return {'n': n, 'r': lam.size, 'p': p}, outputs, contained

    def do_down(self, data):
        lam, n, p, steps = data['shape'], data['n'], data['p'], data['steps']
        source = self._module(data)
        rows = [{'step': 0, 'r': source.r, 'dim': source.dim, 'closed': True}]
        module = source
        for k in range(1, steps + 1):
            module = down(module)
            rows.append({'step': k, 'r': module.r, 'dim': module.dim, 'closed': module.closed})
        try:
            target = specht(shift(lam, -steps, n), n, p, self.store, self.override_guard)
        except InvalidPartitionError:
            contained = None
        else:
            contained = target.contains(module)
        closed = all(row['closed'] for row in rows)
        outputs = {'rows': rows, 'dim': module.dim, 'closed': closed, 'within_specht': contained}
        return {'n': n, 'r': lam.size, 'p': p}, outputs, closed and contained is not False

    def do_verify_updown(self, data):
        module = self._module(data)
        report = verify_updown_laws(module, self.override_guard)
        outputs = {
            'label': report.label,
            'down_up_within': report.down_up_within,
            'within_up_down': report.within_up_down,
            'down_up_down_stable': report.down_up_down_stable,
            'strictly_lowered': report.strictly_lowered,
            'dims': report.dims,
        }
        return {'n': module.n, 'r': module.r, 'p': module.p}, outputs, report.passed

    def do_verify_eq3(self, data):
        lam, n, p, steps = data['shape'], data['n'], data['p'], data['steps']
        base = shift(lam, -1, n)
        reports = verify_radical_chain(base, n, p, steps, self.store, self.override_guard)
        try:
            cert = certificate(base, n, p)
        except RegionError:
            bound = None
        else:
            bound = theorem1_bound(base.size, n, cert.a)
        outputs = {
            'rows': [
                {
                    'k': k,
                    'shape': report.shape,
                    'restriction': report.restriction_holds,
                    'induction': report.induction_holds,
                    'dim_radical': report.dims['P_top'],
                }
                for k, report in enumerate(reports, start=1)
            ],
            'equal': all(report.induction_holds for report in reports),
            'theorem2_applies': theorem2_applies(lam, n, p),
            'theorem1_bound': bound,
        }
        passed = all(report.passed for report in reports)
        return {'n': n, 'r': lam.size, 'p': p}, outputs, passed

    def do_verify_down_radical(self, data):
        nu, n, p = data['shape'], data['n'], data['p']
        report = verify_radical_identities(nu, n, p, store=self.store, override_guard=self.override_guard)
        outputs = {
            'lowered_shape': report.lowered_shape,
            'equal': report.restriction_holds,
            'dims': report.dims,
        }
        return {'n': n, 'r': nu.size, 'p': p}, outputs, report.passed

    def do_schur_weyl_kernel(self, data):
        r, n, p = data['r'], data['n'], data['p']
        report = kernel_ideal_check(r, n, p)
        outputs = {
            'group_order': report.group_order,
            'image_rank': report.image_rank,
            'kernel_dim': report.kernel_dim,
            'ideal_dim': report.ideal_dim,
            'equal': report.equal,
        }
        return {'n': n, 'r': r, 'p': p}, outputs, report.passed

    def do_condition1(self, data):
        lam, n, p = data['shape'], data['n'], data['p']
        cert = certificate(lam, n, p, data['route'])
        if cert.route is Route.TWO_PART:
            floor = p ** cert.k - 1
            m_max = data.get('m_max')
            sweep = invariant_preserved(p, cert.k, floor + 1000 if m_max is None else m_max)
        elif n >= 2:
            sweep = lemma1_sweep(p, n)
        else:
            sweep = None
        outputs = cert.as_dict()
        outputs['theorem1_bound'] = theorem1_bound(lam.size, n, cert.a)
        outputs['theorem2_applies'] = theorem2_applies(lam, n, p)
        outputs['swept_range'] = list(sweep.swept_range) if sweep else None
        outputs['counterexamples'] = sweep.counterexamples if sweep else []
        return {'n': n, 'r': lam.size, 'p': p}, outputs, sweep is None or sweep.passed

    def do_lemma1_sweep(self, data):
        report = lemma1_sweep(data['p'], data['n'], data.get('r_start'), data.get('r_stop'))
        outputs = report.as_dict()
        outputs['rows'] = report.rows
        return {'n': data['n'], 'r': None, 'p': data['p']}, outputs, report.passed

    def do_delta_sweep(self, data):
        report = invariant_preserved(data['p'], data['k'], data['m_max'])
        outputs = report.as_dict()
        outputs['rows'] = report.rows
        return {'n': 2, 'r': None, 'p': data['p']}, outputs, report.passed

    def do_bound(self, data):
        r, n, a = data['r'], data['n'], data['a']
        return {'n': n, 'r': r, 'p': None}, {'k': theorem1_bound(r, n, a)}, True

    def do_suite(self, data):
        results = run_suite(data['profile'], data['jobs'])
        outputs = suite_outputs(results)
        outputs['profile'] = data['profile']
        return {'n': None, 'r': None, 'p': None}, outputs, not outputs['failed']


def _format_errors(errors) -> str:
    messages = []
    for field, problems in errors.items():
        if isinstance(problems, dict):
            problems = [f'{key}: {value}' for key, value in problems.items()]
        for problem in problems:
            label = '--lambda' if field == 'shape' else f'--{field}'.replace('_', '-')
            messages.append(problem if field == 'non_field_errors' else f'{label}: {problem}')
    return '; '.join(messages)
