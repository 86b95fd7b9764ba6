import jsonschema
from django.test import SimpleTestCase

from modular.partitions import Partition
from modular.reports import build_report, load_schema, render
from modular.serializers import (
    LemmaOneInputSerializer, ModuleInputSerializer, ReportSerializer, ShapeInputSerializer,
)


class InputSerializerTests(SimpleTestCase):
    def test_valid_shape(self):
        serializer = ShapeInputSerializer(data={'shape': '3,1', 'n': '2', 'p': '3'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['shape'], Partition((3, 1)))
        self.assertEqual(serializer.validated_data['n'], 2)
        self.assertEqual(serializer.data['shape'], '3,1')

    def test_malformed_partition(self):
        serializer = ShapeInputSerializer(data={'shape': '1,3', 'n': 2, 'p': 3})
        self.assertFalse(serializer.is_valid())
        self.assertIn('shape', serializer.errors)

    def test_composite_modulus(self):
        serializer = ShapeInputSerializer(data={'shape': '2,1', 'n': 2, 'p': 4})
        self.assertFalse(serializer.is_valid())
        self.assertIn('p', serializer.errors)

    def test_too_many_parts(self):
        serializer = ShapeInputSerializer(data={'shape': '1,1,1', 'n': 2, 'p': 3})
        self.assertFalse(serializer.is_valid())
        self.assertIn('shape', serializer.errors)

    def test_missing_values(self):
        serializer = ShapeInputSerializer(data={'shape': '2,1'})
        self.assertFalse(serializer.is_valid())
        self.assertEqual(set(serializer.errors), {'n', 'p'})

    def test_module_defaults(self):
        serializer = ModuleInputSerializer(data={'shape': '2,1', 'n': 2, 'p': 2})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['module'], 'specht')
        self.assertEqual(serializer.validated_data['steps'], 1)

    def test_lemma_one_needs_n_below_p(self):
        self.assertFalse(LemmaOneInputSerializer(data={'p': 3, 'n': 3}).is_valid())
        self.assertTrue(LemmaOneInputSerializer(data={'p': 5, 'n': 3}).is_valid())


class ReportTests(SimpleTestCase):
    def setUp(self):
        self.report = build_report(
            'bound', {'r': 2, 'n': 2}, {'r': 2, 'n': 2, 'a': 1}, {'k': 9}, True,
        )

    def test_report_keys(self):
        self.assertEqual(
            list(self.report), ['command', 'version', 'parameters', 'input', 'outputs', 'passed']
        )
        self.assertEqual(self.report['parameters'], {'n': 2, 'r': 2, 'p': None})
        self.assertTrue(ReportSerializer(data=self.report).is_valid())

    def test_timing_is_opt_in(self):
        timed = build_report('bound', {}, {}, {'k': 9}, True, elapsed=0.5)
        self.assertEqual(timed['timing'], {'elapsed_ms': 500.0})

    def test_schema_lists_the_report_keys(self):
        schema = load_schema()
        self.assertEqual(set(schema['required']), set(self.report))
        self.assertIn('timing', schema['properties'])

    def test_schema_is_enforced_on_build(self):
        # the serializer would coerce '2'; the schema does not
        with self.assertRaises(jsonschema.ValidationError):
            build_report('bound', {'n': 2, 'r': '2'}, {}, {'k': 9}, True)

    def test_renderers(self):
        self.assertTrue(render(self.report, 'json').startswith('{\n  "command": "bound"'))
        self.assertEqual(render(self.report, 'csv'), 'output,value\nk,9\n')
        self.assertIn('bound (passed)', render(self.report, 'text'))

    def test_rows_become_the_table(self):
        report = build_report(
            'lemma1-sweep', {'n': 2, 'p': 5}, {}, {'rows': [{'R': 4, 'checked': 1}, {'R': 5, 'checked': 1}]},
            True,
        )
        self.assertEqual(render(report, 'csv'), 'R,checked\n4,1\n5,1\n')
