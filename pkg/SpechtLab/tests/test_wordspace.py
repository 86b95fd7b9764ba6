from itertools import permutations, product

import numpy as np
from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings, strategies as st
from sympy import GF, Matrix
from sympy.combinatorics import Permutation
from sympy.polys.matrices import DomainMatrix

from modular.exactla import FieldVector, Subspace
from modular.exceptions import (
    CacheFormatError, InvalidPartitionError, ResourceGuardError, SingularPartitionError, SpechtError,
)
from modular.partitions import (
    Partition, conjugate, count_standard_tableaux, enumerate_partitions, is_p_regular,
)
from modular.suite import FROZEN_IRREDUCIBLE_DIMS
from modular.wordspace import (
    GModule, Tableau, act, adjacent, column_bracket_product, compose, cycle, dim_irreducible,
    gram_radical, identity, inverse, irreducible_table, is_invariant, multinomial, permute_indices,
    place_permutation, sign, specht_module, tabloid_of, transposition, weight, weight_space,
    weight_space_dim, word_at, word_index,
)


def gram_rank_oracle(shape, n, p):
    """
    dim D^shape straight from the definition: the rank of the Gram matrix of every
    polytabloid e_T, written as signed sums of words (letter i on row i of T).
    """
    shape = Partition(shape)
    r = shape.size
    columns, start = [], 1
    for height in conjugate(shape):
        columns.append(tuple(range(start, start + height)))
        start += height
    vectors = np.zeros((0, n ** r), dtype=np.int64)
    for filling in permutations(range(1, r + 1)):
        vector = np.zeros(n ** r, dtype=np.int64)
        for choice in product(*(permutations(column) for column in columns)):
            word, coefficient = [0] * r, 1
            for column, moved in zip(columns, choice):
                coefficient *= Permutation([column.index(entry) for entry in moved]).signature()
                for row, entry in enumerate(moved, start=1):
                    word[filling[entry - 1] - 1] = row
            index = 0
            for letter in word:
                index = index * n + letter - 1
            vector[index] += coefficient
        vectors = np.vstack([vectors, vector])
    gram = vectors @ vectors.T % p
    return DomainMatrix.from_Matrix(Matrix(gram.tolist())).convert_to(GF(p)).rank()


class PermutationTests(SimpleTestCase):
    def test_compose_applies_right_factor_first(self):
        pi, rho = (2, 3, 1), (2, 1, 3)
        self.assertEqual(compose(pi, rho), (3, 2, 1))
        self.assertEqual(compose(pi, inverse(pi)), identity(3))

    def test_helpers(self):
        self.assertEqual(transposition(1, 3, 3), (3, 2, 1))
        self.assertEqual(adjacent(2, 4), (1, 3, 2, 4))
        self.assertEqual(cycle([1, 2, 3], 4), (2, 3, 1, 4))
        self.assertEqual(sign(cycle([1, 2, 3], 3)), 1)
        self.assertEqual(sign(adjacent(1, 3)), -1)


class WordTests(SimpleTestCase):
    def test_index_order(self):
        self.assertEqual(word_index((1, 1, 1), 2), 0)
        self.assertEqual(word_index((1, 2), 2), 1)
        self.assertEqual(word_index((2, 1), 2), 2)
        self.assertEqual(word_at(5, 3, 2), (2, 1, 2))

    @given(st.integers(1, 4), st.integers(1, 6), st.data())
    def test_index_round_trip(self, n, r, data):
        index = data.draw(st.integers(0, n ** r - 1))
        self.assertEqual(word_index(word_at(index, r, n), n), index)

    def test_weight_and_tabloid(self):
        self.assertEqual(weight((1, 2, 1, 3), 3), (2, 1, 1))
        self.assertEqual(tabloid_of((1, 2, 1), 2), (frozenset({1, 3}), frozenset({2})))

    def test_transposition_acts_on_places(self):
        vector = FieldVector({word_index((1, 2), 2): 1}, 4, 5)
        moved = act((2, 1), vector, 2)
        self.assertEqual(moved.support(), [word_index((2, 1), 2)])

    def test_three_cycle_moves_letters_forward(self):
        vector = FieldVector({word_index((1, 2, 3), 3): 1}, 27, 5)
        moved = act(cycle([1, 2, 3], 3), vector, 3)
        self.assertEqual(moved.support(), [word_index((3, 1, 2), 3)])

    @given(st.permutations(range(1, 5)), st.data())
    def test_form_is_contravariant(self, sigma, data):
        sigma = tuple(sigma)
        vectors = st.dictionaries(st.integers(0, 80), st.integers(1, 2), max_size=8)
        v = FieldVector(data.draw(vectors), 81, 3)
        u = FieldVector(data.draw(vectors), 81, 3)
        self.assertEqual(act(sigma, v, 3).dot(u), v.dot(act(inverse(sigma), u, 3)))

    @given(st.permutations(range(1, 6)), st.lists(st.integers(0, 242), min_size=1, max_size=20))
    def test_support_images_match_the_full_table(self, pi, indices):
        pi = tuple(pi)
        images = permute_indices(pi, np.array(indices), 3)
        self.assertEqual(images.tolist(), place_permutation(pi, 3)[indices].tolist())

    def test_action_on_a_large_word_space(self):
        word = (1, 2, 3, 4, 1, 2, 3, 4, 4, 3, 2)
        vector = FieldVector({word_index(word, 4): 2}, 4 ** 11, 5)
        pi = cycle(range(1, 12), 11)
        moved = act(pi, vector, 4)
        self.assertEqual(dict(moved.coefficients), {word_index(word[-1:] + word[:-1], 4): 2})
        self.assertEqual(act(inverse(pi), moved, 4), vector)

    @given(st.permutations(range(1, 5)), st.permutations(range(1, 5)), st.data())
    def test_action_is_a_homomorphism(self, pi, rho, data):
        pi, rho = tuple(pi), tuple(rho)
        coefficients = data.draw(st.dictionaries(st.integers(0, 80), st.integers(1, 2), max_size=6))
        vector = FieldVector(coefficients, 81, 3)
        self.assertEqual(act(compose(pi, rho), vector, 3), act(pi, act(rho, vector, 3), 3))

    @given(st.permutations(range(1, 6)), st.lists(st.integers(1, 3), min_size=5, max_size=5))
    def test_tabloids_follow_the_action(self, pi, word):
        pi, word = tuple(pi), tuple(word)
        moved = word_at(act(pi, FieldVector({word_index(word, 3): 1}, 243, 2), 3).support()[0], 5, 3)
        expected = tuple(frozenset(pi[t - 1] for t in row) for row in tabloid_of(word, 3))
        self.assertEqual(tabloid_of(moved, 3), expected)
        self.assertEqual(weight(moved, 3), weight(word, 3))


class SpechtModuleTests(SimpleTestCase):
    def test_bracket_of_a_column(self):
        tableau = Tableau.column_superstandard((1, 1))
        bracket = column_bracket_product(tableau, 2, 3)
        self.assertEqual(dict(bracket.coefficients), {1: 1, 2: 2})

    def test_bracket_of_two_one(self):
        bracket = column_bracket_product(Tableau.column_superstandard((2, 1)), 2, 3)
        self.assertEqual(dict(bracket.coefficients),
                         {word_index((1, 2, 1), 2): 1, word_index((2, 1, 1), 2): 2})

    def test_bracket_support_has_the_shape_as_weight(self):
        for r in range(1, 7):
            for lam in enumerate_partitions(r, r):
                n = len(lam)
                bracket = column_bracket_product(Tableau.column_superstandard(lam), n, 2)
                with self.subTest(lam=str(lam)):
                    for index in bracket.support():
                        self.assertEqual(weight(word_at(index, r, n), n), lam.padded(n))

    def test_tableau_validation(self):
        with self.assertRaises(InvalidPartitionError):
            Tableau(Partition((2, 1)), ((1, 2), (2,)))
        with self.assertRaises(InvalidPartitionError):
            column_bracket_product(Tableau.column_superstandard((1, 1, 1)), 2, 2)

    def test_dimensions_match_standard_tableaux(self):
        for p in (2, 3):
            for n in (1, 2, 3):
                for r in range(1, 6):
                    for lam in enumerate_partitions(r, n):
                        with self.subTest(lam=str(lam), n=n, p=p):
                            self.assertEqual(specht_module(lam, n, p).dim, count_standard_tableaux(lam))

    def test_module_is_closed(self):
        module = specht_module((3, 1), 2, 2)
        self.assertTrue(module.closed)
        self.assertTrue(is_invariant(module.carrier, 4, 2))
        self.assertEqual(module.shape, Partition((3, 1)))

    def test_too_many_parts(self):
        with self.assertRaises(InvalidPartitionError):
            specht_module((1, 1, 1), 2, 2)

    @override_settings(SPECHT_WORD_LIMIT=10)
    def test_resource_guard(self):
        with self.assertRaises(ResourceGuardError):
            specht_module((3, 1), 2, 2)
        self.assertEqual(specht_module((3, 1), 2, 2, override_guard=True).dim, 3)

    @override_settings(SPECHT_BLOCK_LIMIT=4)
    def test_block_guard(self):
        with self.assertRaisesMessage(ResourceGuardError, 'SPECHT_BLOCK_LIMIT=4'):
            specht_module((3, 1), 2, 2)

    def test_certify_rejects_open_subspaces(self):
        line = Subspace.from_vectors([FieldVector({1: 1}, 4, 2)], 4, 2)
        with self.assertRaises(SpechtError):
            GModule(line, 2, 2, 2).certify()
        self.assertFalse(GModule(line, 2, 2, 2).is_closed())

    def test_lattice_operations(self):
        whole = GModule.full(2, 2, 3)
        specht = specht_module((1, 1), 2, 3)
        self.assertTrue(specht <= whole)
        self.assertEqual(specht + whole, whole)
        self.assertEqual(specht.intersection(GModule.zero(2, 2, 3)), GModule.zero(2, 2, 3))

    def test_serialization(self):
        module = specht_module((2, 1), 2, 3)
        text = module.dumps()
        self.assertTrue(text.startswith('specht-gmodule v1\n'))
        loaded = GModule.loads(text)
        self.assertEqual(loaded, module)
        self.assertEqual(loaded.shape, module.shape)
        with self.assertRaises(CacheFormatError):
            GModule.loads(text.replace('v1', 'v0', 1))
        with self.assertRaises(CacheFormatError):
            GModule.loads(text.replace('dim=2', 'dim=3'))


class IrreducibleTests(SimpleTestCase):
    def test_two_one(self):
        self.assertEqual(dim_irreducible((2, 1), 2, 3), 1)
        self.assertEqual(dim_irreducible((2, 1), 2, 2), 2)
        self.assertEqual(dim_irreducible((2, 1), 2, 5), 2)

    def test_oracle_agrees_on_small_shapes(self):
        for p, table in FROZEN_IRREDUCIBLE_DIMS.items():
            for shape, value in table.items():
                if sum(shape) > 5:
                    continue
                with self.subTest(shape=shape, p=p):
                    n = max(2, len(shape))
                    self.assertEqual(gram_rank_oracle(shape, n, p), value)
                    specht = specht_module(shape, n, p)
                    radical = gram_radical(specht)
                    self.assertTrue(radical.carrier < specht.carrier)
                    self.assertEqual(specht.dim - radical.dim, value)

    def test_frozen_table_is_complete(self):
        for p, table in FROZEN_IRREDUCIBLE_DIMS.items():
            for r in range(1, 8):
                with self.subTest(p=p, r=r):
                    expected = {lam.parts for lam in enumerate_partitions(r, r) if is_p_regular(lam, p)}
                    self.assertEqual({shape for shape in table if sum(shape) == r}, expected)

    def test_frozen_regressions(self):
        for p, table in FROZEN_IRREDUCIBLE_DIMS.items():
            for shape, value in table.items():
                if sum(shape) <= 5:
                    continue
                with self.subTest(shape=shape, p=p):
                    specht = specht_module(shape, max(2, len(shape)), p)
                    radical = gram_radical(specht)
                    self.assertTrue(radical.carrier < specht.carrier)
                    self.assertEqual(specht.dim - radical.dim, value)

    def test_known_dimensions(self):
        for shape, n, p, value in [
            ((4, 2), 2, 3, 9), ((2, 2, 1, 1), 4, 3, 9), ((3, 1, 1), 3, 3, 6),
            ((4, 1, 1), 3, 5, 10), ((4, 2), 2, 5, 8), ((2, 2, 1, 1), 4, 5, 1),
        ]:
            with self.subTest(shape=shape, p=p):
                self.assertEqual(dim_irreducible(shape, n, p), value)

    def test_large_characteristic_is_semisimple(self):
        for lam in enumerate_partitions(4, 3):
            self.assertEqual(dim_irreducible(lam, 3, 5), count_standard_tableaux(lam))

    def test_radical_needs_regular_shape(self):
        with self.assertRaises(SingularPartitionError):
            dim_irreducible((1, 1), 2, 2)
        with self.assertRaises(SpechtError):
            gram_radical(GModule.full(2, 2, 3))

    def test_table(self):
        self.assertEqual(irreducible_table(4, 2, 3), {Partition((4,)): 1, Partition((3, 1)): 3,
                                                      Partition((2, 2)): 1})


class WeightSpaceTests(SimpleTestCase):
    def test_multinomial(self):
        self.assertEqual(multinomial(4, (2, 1, 1)), 12)
        self.assertEqual(weight_space_dim(4, 2, (2, 2)), 6)
        self.assertEqual(weight_space_dim(10, 4, (4, 3, 2, 1)), multinomial(10, (4, 3, 2, 1)))

    def test_weight_space_module(self):
        module = weight_space(3, 2, (2, 1), 5)
        self.assertEqual(module.dim, 3)
        self.assertTrue(module.is_closed())
        self.assertTrue(module.contains(specht_module((2, 1), 2, 5)))
