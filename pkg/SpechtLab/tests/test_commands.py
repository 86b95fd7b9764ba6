import json
import shutil
import tempfile
from io import StringIO

import jsonschema
from django.test import SimpleTestCase

from modular.cli import run
from modular.reports import load_schema


class SpechtCommandTests(SimpleTestCase):
    def setUp(self):
        self.cache_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.cache_dir, ignore_errors=True)

    def call(self, *argv):
        stdout, stderr = StringIO(), StringIO()
        code = run([*argv, '--cache-dir', self.cache_dir], stdout=stdout, stderr=stderr)
        return code, stdout.getvalue(), stderr.getvalue()

    def call_json(self, *argv):
        code, out, err = self.call(*argv)
        return code, json.loads(out), err

    def test_dim_irreducible(self):
        code, report, _ = self.call_json('dim-irreducible', '--lambda', '2,1', '--n', '2', '--p', '3')
        self.assertEqual(code, 0)
        self.assertEqual(report['command'], 'dim-irreducible')
        self.assertEqual(report['parameters'], {'n': 2, 'r': 3, 'p': 3})
        self.assertEqual(report['input'], {'shape': '2,1', 'n': 2, 'p': 3})
        self.assertEqual(report['outputs']['dim'], 1)
        self.assertTrue(report['passed'])

    def test_dim_specht(self):
        code, report, _ = self.call_json('dim-specht', '--lambda', '3,1', '--n', '2', '--p', '2')
        self.assertEqual(code, 0)
        self.assertEqual(report['outputs'], {'dim': 3, 'standard_tableaux': 3})

    def test_equation_three(self):
        code, report, _ = self.call_json('verify-eq3', '--lambda', '3,3', '--n', '2', '--p', '3')
        self.assertEqual(code, 0)
        self.assertTrue(report['outputs']['equal'])
        self.assertTrue(report['outputs']['theorem2_applies'])
        self.assertEqual(report['outputs']['rows'][0]['shape'], '3,3')

    def test_down_radical(self):
        code, report, _ = self.call_json('verify-down-radical', '--lambda', '3,1', '--n', '2', '--p', '2')
        self.assertEqual(code, 0)
        self.assertEqual(report['outputs']['lowered_shape'], '2,0')
        self.assertTrue(report['outputs']['equal'])

    def test_up_and_down(self):
        code, report, _ = self.call_json('up', '--lambda', '1,1', '--n', '2', '--p', '2')
        self.assertEqual(code, 0)
        self.assertEqual([row['r'] for row in report['outputs']['rows']], [2, 4])
        self.assertTrue(report['outputs']['within_specht'])
        code, report, _ = self.call_json('down', '--lambda', '3,1', '--n', '2', '--p', '3', '--steps', '2')
        self.assertEqual(code, 0)
        self.assertIsNone(report['outputs']['within_specht'])
        self.assertEqual(report['outputs']['rows'][-1]['r'], 0)

    def test_verify_updown(self):
        code, report, _ = self.call_json(
            'verify-updown', '--lambda', '2,1', '--n', '2', '--p', '2', '--module', 'radical',
        )
        self.assertEqual(code, 0)
        self.assertTrue(report['outputs']['down_up_within'])

    def test_schur_weyl_kernel(self):
        code, report, _ = self.call_json('schur-weyl-kernel', '--r', '3', '--n', '2', '--p', '5')
        self.assertEqual(code, 0)
        self.assertEqual(report['outputs']['kernel_dim'], 1)
        self.assertEqual(report['outputs']['image_rank'], 5)

    def test_condition1(self):
        code, report, _ = self.call_json(
            'condition1', '--lambda', '3,1', '--n', '2', '--p', '2', '--m-max', '100',
        )
        self.assertEqual(code, 0)
        self.assertEqual(report['outputs']['route'], 'two-part')
        self.assertEqual((report['outputs']['k'], report['outputs']['a']), (2, 0))
        self.assertEqual(report['outputs']['swept_range'], [3, 100])
        code, report, _ = self.call_json('condition1', '--lambda', '3,2', '--n', '2', '--p', '5')
        self.assertEqual(code, 0)
        self.assertEqual(report['outputs']['route'], 'alcove')

    def test_condition1_outside_every_route(self):
        code, _, err = self.call('condition1', '--lambda', '5,1,0', '--n', '3', '--p', '5')
        self.assertEqual(code, 2)
        self.assertTrue(err)

    def test_bound(self):
        code, report, _ = self.call_json('bound', '--r', '5', '--n', '2', '--a', '2')
        self.assertEqual(code, 0)
        self.assertEqual(report['outputs'], {'k': 43})
        self.assertEqual(report['parameters'], {'n': 2, 'r': 5, 'p': None})

    def test_delta_sweep_as_csv(self):
        code, out, _ = self.call('delta-sweep', '--p', '3', '--k', '1', '--m-max', '20', '--format', 'csv')
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'case,checked,counterexamples')
        self.assertEqual(len(lines), 4)

    def test_lemma1_sweep_as_csv(self):
        code, out, _ = self.call('lemma1-sweep', '--p', '5', '--n', '2', '--format', 'csv')
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'R,checked,counterexamples')
        self.assertEqual(lines[1], '4,1,0')
        self.assertEqual(len(lines), 22)

    def test_failed_verification_exits_one(self):
        code, out, err = self.call('lemma1-sweep', '--p', '5', '--n', '2', '--r-start', '1', '--r-stop', '3')
        self.assertEqual(code, 1)
        self.assertFalse(json.loads(out)['passed'])
        self.assertIn('lemma1-sweep failed', err)

    def test_text_format(self):
        code, out, _ = self.call('bound', '--r', '2', '--n', '2', '--a', '1', '--format', 'text')
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0], 'bound (passed)')

    def test_usage_errors(self):
        self.assertEqual(self.call('dim-irreducible', '--lambda', '2,1', '--n', '2', '--p', '3', '--bogus')[0], 2)
        self.assertEqual(self.call('no-such-command')[0], 2)
        self.assertEqual(self.call('dim-specht', '--lambda', '2,1', '--n', 'two', '--p', '3')[0], 2)

    def test_invalid_inputs(self):
        code, _, err = self.call('dim-specht', '--lambda', '1,2', '--n', '2', '--p', '3')
        self.assertEqual(code, 2)
        self.assertIn('--lambda', err)
        code, _, err = self.call('dim-specht', '--lambda', '2,1', '--n', '2', '--p', '6')
        self.assertEqual(code, 2)
        self.assertIn('--p', err)
        self.assertEqual(self.call('lemma1-sweep', '--p', '3', '--n', '3')[0], 2)

    def test_singular_shape(self):
        code, out, err = self.call('dim-irreducible', '--lambda', '1,1', '--n', '2', '--p', '2')
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertTrue(err)

    def test_resource_guard(self):
        with self.settings(SPECHT_WORD_LIMIT=10):
            argv = ('dim-specht', '--lambda', '3,1', '--n', '2', '--p', '2')
            self.assertEqual(self.call(*argv)[0], 2)
            self.assertEqual(self.call(*argv, '--override-guard')[0], 0)

    def test_oversized_elimination_is_reported(self):
        with self.settings(SPECHT_BLOCK_LIMIT=4):
            code, out, err = self.call('dim-specht', '--lambda', '3,1', '--n', '2', '--p', '2')
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertIn('SPECHT_BLOCK_LIMIT', err)

    def test_reports_are_byte_stable(self):
        argv = ('radical', '--lambda', '3,1', '--n', '2', '--p', '2')
        cold = self.call(*argv)[1]
        warm = self.call(*argv)[1]
        self.assertEqual(cold, warm)
        shutil.rmtree(self.cache_dir)
        self.assertEqual(self.call(*argv)[1], cold)

    def test_timing_is_opt_in(self):
        argv = ('bound', '--r', '2', '--n', '2', '--a', '1')
        self.assertNotIn('timing', self.call_json(*argv)[1])
        timed = self.call_json(*argv, '--timing')[1]
        self.assertGreaterEqual(timed['timing']['elapsed_ms'], 0)

    def test_reports_follow_the_schema(self):
        schema = load_schema()
        for argv in [
            ('dim-specht', '--lambda', '2,1', '--n', '2', '--p', '5'),
            ('dim-irreducible', '--lambda', '2,1', '--n', '2', '--p', '2'),
            ('radical', '--lambda', '3,1', '--n', '2', '--p', '2'),
            ('up', '--lambda', '1,1', '--n', '2', '--p', '3'),
            ('down', '--lambda', '3,1', '--n', '2', '--p', '3'),
            ('verify-updown', '--lambda', '2,1', '--n', '2', '--p', '3'),
            ('verify-eq3', '--lambda', '3,3', '--n', '2', '--p', '3'),
            ('verify-down-radical', '--lambda', '3,1', '--n', '2', '--p', '2'),
            ('schur-weyl-kernel', '--r', '3', '--n', '2', '--p', '2'),
            ('condition1', '--lambda', '3,1', '--n', '2', '--p', '2', '--m-max', '50'),
            ('lemma1-sweep', '--p', '5', '--n', '2', '--r-start', '1', '--r-stop', '3'),
            ('delta-sweep', '--p', '2', '--k', '1', '--m-max', '10'),
            ('bound', '--r', '2', '--n', '2', '--a', '1', '--timing'),
        ]:
            with self.subTest(command=argv[0]):
                report = self.call_json(*argv)[1]
                jsonschema.validate(instance=report, schema=schema)

    def test_schema_rejects_malformed_reports(self):
        schema = load_schema()
        report = self.call_json('bound', '--r', '2', '--n', '2', '--a', '1')[1]
        for broken in [
            {**report, 'extra': 1},
            {**report, 'passed': 'yes'},
            {**report, 'parameters': {'n': 2, 'r': '2', 'p': None}},
            {key: value for key, value in report.items() if key != 'outputs'},
        ]:
            with self.assertRaises(jsonschema.ValidationError):
                jsonschema.validate(instance=broken, schema=schema)
