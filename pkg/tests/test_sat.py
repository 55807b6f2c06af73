import numpy as np
import pytest

from bbqaoa import (
    Clause,
    InfeasibleInstanceError,
    ParseError,
    ProblemInstance,
    SizeError,
    brute_force_cmax,
    build_diagonal,
    bundled_instance,
    bundled_instance_path,
    clause_satisfied,
    parse_instance,
    random_instance,
    serialize_instance,
)
from bbqaoa.sat import assignment_bits, max_distinct_clauses


def count_satisfied_oracle(instance, index):
    """Independent per-clause count used to cross-check the vectorized builder."""
    bits = assignment_bits(index, instance.n_vars)
    return sum(clause_satisfied(cl, bits) for cl in instance.clauses)


def test_clause_canonical_order():
    cl = Clause.make(9, False, 8, True)
    assert (cl.var_a, cl.neg_a, cl.var_b, cl.neg_b) == (8, True, 9, False)
    assert Clause.make(8, True, 9, False) == cl


def test_clause_rejects_equal_variables():
    with pytest.raises(ValueError):
        Clause.make(3, False, 3, True)
    with pytest.raises(ValueError):
        Clause(2, False, 2, False)


def test_clause_satisfied_unique_falsifier():
    # (x0 | ~x1) fails only on x0=0, x1=1.
    cl = Clause.make(0, False, 1, True)
    assert clause_satisfied(cl, [0, 1]) is False
    for bits in ([0, 0], [1, 0], [1, 1]):
        assert clause_satisfied(cl, bits) is True


def test_clause_satisfied_negated_pair():
    # (~x8 | x9) fails only on x8=1, x9=0.
    cl = Clause.make(8, True, 9, False)
    bits = [0] * 10
    bits[8], bits[9] = 1, 0
    assert clause_satisfied(cl, bits) is False
    bits[9] = 1
    assert clause_satisfied(cl, bits) is True


def test_clause_satisfied_bounds():
    cl = Clause.make(0, False, 5, False)
    with pytest.raises(IndexError):
        clause_satisfied(cl, [0, 1, 0])


def test_instance_rejects_duplicates_and_bad_indices():
    cl = Clause.make(0, False, 1, True)
    with pytest.raises(ValueError):
        ProblemInstance(2, [cl, Clause.make(1, True, 0, False)])
    with pytest.raises(ValueError):
        ProblemInstance(1, [cl])
    with pytest.raises(ValueError):
        ProblemInstance(2, [Clause.make(0, False, 5, False)])


def test_build_diagonal_empty_instance():
    diag = build_diagonal(ProblemInstance(3, []))
    assert np.all(diag.values == 0)


def test_build_diagonal_single_clause():
    # (x0 | ~x1) over 2 vars, x0 the high bit: only index 01b falsifies.
    diag = build_diagonal(ProblemInstance(2, [Clause.make(0, False, 1, True)]))
    assert diag.values.tolist() == [1, 0, 1, 1]


def test_build_diagonal_matches_clause_loop(rng):
    for _ in range(12):
        n_vars = int(rng.integers(2, 5))
        n_clauses = int(rng.integers(1, max_distinct_clauses(n_vars) + 1))
        instance = random_instance(n_vars, n_clauses, rng)
        diag = build_diagonal(instance)
        for index in range(1 << n_vars):
            assert diag.values[index] == count_satisfied_oracle(instance, index)


def test_diagonal_mean_is_three_quarters(rng):
    # Every 2-variable clause is satisfied by exactly 3 of 4 assignments.
    for name in ("clauses10", "clauses20", "clauses30"):
        instance = bundled_instance(name)
        diag = build_diagonal(instance)
        assert diag.values.mean() == 0.75 * instance.n_clauses
    instance = random_instance(6, 20, rng)
    assert build_diagonal(instance).values.mean() == 0.75 * 20


def test_bundled_diagonal_spot_values(clauses10):
    # All-false and all-true assignments, counted clause by clause beforehand.
    _, diag, _ = clauses10
    assert diag.values[0] == 9
    assert diag.values[1023] == 9


def test_brute_force_cmax_small_cases():
    single = ProblemInstance(2, [Clause.make(0, False, 1, True)])
    assert brute_force_cmax(single) == 1
    xor_like = ProblemInstance(
        2,
        [
            Clause.make(0, False, 1, False),
            Clause.make(0, True, 1, True),
            Clause.make(0, False, 1, True),
            Clause.make(0, True, 1, False),
        ],
    )
    # Each assignment falsifies exactly one of the four clauses.
    assert brute_force_cmax(xor_like) == 3


def test_brute_force_cmax_bundled_instances(clauses10, clauses20, clauses30):
    assert clauses10[2] == 10
    assert clauses20[2] == 19
    assert clauses30[2] == 27


def test_cmax_lower_bound_and_diagonal_max(rng):
    for _ in range(10):
        n_vars = int(rng.integers(2, 6))
        n_clauses = int(rng.integers(1, max_distinct_clauses(n_vars) + 1))
        instance = random_instance(n_vars, n_clauses, rng)
        c_max = brute_force_cmax(instance)
        assert c_max == build_diagonal(instance).max_value()
        assert c_max >= -(-3 * n_clauses // 4)  # at least ceil(3/4 of the clauses)


def test_size_guard():
    with pytest.raises(SizeError):
        random_instance(30, 5, np.random.default_rng(0))


def test_random_instance_deterministic():
    a = random_instance(10, 20, np.random.default_rng(7))
    b = random_instance(10, 20, np.random.default_rng(7))
    assert a == b
    assert serialize_instance(a) == serialize_instance(b)


def test_random_instance_saturates_distinct_clauses():
    instance = random_instance(10, 180, np.random.default_rng(3))
    assert instance.n_clauses == 180 == max_distinct_clauses(10)
    assert len(set(instance.clauses)) == 180


def test_random_instance_infeasible_count():
    with pytest.raises(InfeasibleInstanceError):
        random_instance(10, 181, np.random.default_rng(0))


def test_serialize_parse_round_trip(rng):
    instance = random_instance(8, 20, rng)
    assert parse_instance(serialize_instance(instance)) == instance


def test_serialization_is_canonical(rng):
    instance = random_instance(8, 20, rng)
    text = serialize_instance(instance)
    assert serialize_instance(parse_instance(text)) == text


def test_parse_rejects_equal_variables():
    with pytest.raises(ParseError, match="distinct"):
        parse_instance('{"n_vars": 4, "clauses": [[2, 0, 2, 1]]}')


def test_parse_rejects_duplicates():
    with pytest.raises(ParseError, match="duplicate"):
        parse_instance('{"n_vars": 4, "clauses": [[0, 1, 2, 0], [2, 0, 0, 1]]}')


def test_parse_rejects_out_of_range_index():
    with pytest.raises(ParseError, match="out of range"):
        parse_instance('{"n_vars": 3, "clauses": [[0, 0, 3, 0]]}')


def test_parse_reports_json_position():
    with pytest.raises(ParseError, match="line"):
        parse_instance('{"n_vars": 3,\n "clauses": [[0 0]]}')


def test_parse_rejects_bad_flags_and_shapes():
    with pytest.raises(ParseError):
        parse_instance('{"n_vars": 3, "clauses": [[0, 2, 1, 0]]}')
    with pytest.raises(ParseError):
        parse_instance('{"n_vars": 3, "clauses": [[0, 0, 1]]}')
    with pytest.raises(ParseError):
        parse_instance('{"n_vars": 0, "clauses": []}')
    with pytest.raises(ParseError):
        parse_instance('[1, 2, 3]')


def test_bundled_instances_parse():
    for name, n_clauses in (("clauses10", 10), ("clauses20", 20), ("clauses30", 30)):
        instance = bundled_instance(name)
        assert instance.n_vars == 10
        assert instance.n_clauses == n_clauses
        assert bundled_instance_path(name).exists()
    with pytest.raises(ValueError):
        bundled_instance_path("clauses99")
