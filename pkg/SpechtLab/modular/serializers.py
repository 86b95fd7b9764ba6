from rest_framework import serializers
from sympy import isprime

from .exceptions import InvalidPartitionError
from .partitions import Partition


class PartitionField(serializers.Field):
    default_error_messages = {
        'invalid': 'Expected weakly decreasing nonnegative integers like "3,1".',
    }

    def to_internal_value(self, data):
        try:
            return Partition.parse(str(data))
        except InvalidPartitionError:
            self.fail('invalid')

    def to_representation(self, value):
        return value.format()


class PrimeField(serializers.IntegerField):
    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if not isprime(value):
            raise serializers.ValidationError(f'{value} is not prime.')
        return value


class ShapeInputSerializer(serializers.Serializer):
    shape = PartitionField()
    n = serializers.IntegerField(min_value=1)
    p = PrimeField()

    def validate(self, attrs):
        if len(attrs['shape']) > attrs['n']:
            raise serializers.ValidationError({'shape': f'more than n={attrs["n"]} parts.'})
        return attrs


class ModuleInputSerializer(ShapeInputSerializer):
    module = serializers.ChoiceField(choices=['specht', 'radical', 'zero'], default='specht')
    steps = serializers.IntegerField(min_value=1, default=1)


class ChainInputSerializer(ShapeInputSerializer):
    steps = serializers.IntegerField(min_value=1, default=1)


class RankInputSerializer(serializers.Serializer):
    r = serializers.IntegerField(min_value=1)
    n = serializers.IntegerField(min_value=1)
    p = PrimeField()


class ConditionOneInputSerializer(ShapeInputSerializer):
    route = serializers.ChoiceField(choices=['auto', 'alcove', 'two-part'], default='auto')
    m_max = serializers.IntegerField(min_value=0, required=False, allow_null=True)


class DeltaSweepInputSerializer(serializers.Serializer):
    p = PrimeField()
    k = serializers.IntegerField(min_value=1)
    m_max = serializers.IntegerField(min_value=0)


class LemmaOneInputSerializer(serializers.Serializer):
    p = PrimeField()
    n = serializers.IntegerField(min_value=2)
    r_start = serializers.IntegerField(min_value=0, required=False, allow_null=True)
    r_stop = serializers.IntegerField(min_value=0, required=False, allow_null=True)

    def validate(self, attrs):
        if attrs['n'] >= attrs['p']:
            raise serializers.ValidationError({'n': 'the sweep needs n < p.'})
        return attrs


class BoundInputSerializer(serializers.Serializer):
    r = serializers.IntegerField(min_value=1)
    n = serializers.IntegerField(min_value=1)
    a = serializers.IntegerField(min_value=0)


class SuiteInputSerializer(serializers.Serializer):
    profile = serializers.ChoiceField(choices=['quick', 'full'], default='quick')
    jobs = serializers.IntegerField(min_value=1, default=1)


class ParametersSerializer(serializers.Serializer):
    n = serializers.IntegerField(allow_null=True)
    r = serializers.IntegerField(allow_null=True)
    p = serializers.IntegerField(allow_null=True)


class ReportSerializer(serializers.Serializer):
    command = serializers.CharField()
    version = serializers.CharField()
    parameters = ParametersSerializer()
    input = serializers.DictField()
    outputs = serializers.DictField()
    passed = serializers.BooleanField()
    timing = serializers.DictField(required=False)
