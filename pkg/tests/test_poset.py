from __future__ import annotations

from itertools import product

from reorilat.poset import (
    FinitePoset,
    all_congruences,
    generate_congruence,
    is_congruence_normal_oracle,
    is_congruence_uniform_oracle,
    is_distributive_oracle,
    is_semidistributive_oracle,
    respects_operations,
)


def boolean(n: int) -> FinitePoset:
    return FinitePoset.from_subsets(list(range(1 << n)))


def chain(n: int) -> FinitePoset:
    return FinitePoset([((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)])


# M3 and N5 by upsets: bottom 0, atoms, top last
M3 = FinitePoset([0b11111, 0b10010, 0b10100, 0b11000, 0b10000])
N5 = FinitePoset([0b11111, 0b10110, 0b10100, 0b11000, 0b10000])


def test_boolean_lattice_tables():
    p = boolean(3)
    assert p.is_lattice()
    for i, j in product(range(8), repeat=2):
        assert p.join_table[i][j] == (i | j)
        assert p.meet_table[i][j] == (i & j)
    assert p.interval_count() == 27
    assert len(p.covers) == 12


def test_classical_lattice_properties():
    assert is_distributive_oracle(boolean(3))
    assert not is_distributive_oracle(M3) and not is_distributive_oracle(N5)
    assert not is_semidistributive_oracle(M3)
    assert is_semidistributive_oracle(N5)
    assert not is_congruence_normal_oracle(M3)
    assert is_congruence_uniform_oracle(N5)


def test_congruence_counts():
    # a chain of n elements has 2^(n-1) congruences, M3 is simple, B2 has 4
    assert len(all_congruences(chain(4))) == 8
    assert len(all_congruences(M3)) == 2
    assert len(all_congruences(boolean(2))) == 4


def test_generated_congruence_respects_operations():
    p = N5
    for x, y in p.covers:
        labels = generate_congruence(p, [(x, y)])
        assert labels[x] == labels[y]
        assert respects_operations(p, labels)


def test_induced_keeps_order():
    p = boolean(2)
    sub = p.induced([0, 3])
    assert sub.leq(0, 1) and not sub.leq(1, 0)


def test_non_lattice():
    # two minimal elements below two maximal ones
    p = FinitePoset([0b1101, 0b1110, 0b0100, 0b1000])
    assert not p.is_lattice()
