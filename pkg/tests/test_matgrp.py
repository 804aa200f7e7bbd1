import random

import pytest

from cosetgi.errors import ParseError
from cosetgi.grp import PermGroup
from cosetgi.matgrp import (
    MatFp,
    format_matrix,
    gsp4_similitude,
    is_prime,
    parse_matrix,
    preserves_form,
    projective_action,
    projective_points,
    sl2_generators,
    sp4_form,
    sp4_generators,
)
from cosetgi.perm import identity


def test_projective_point_counts():
    assert len(projective_points(4, 3)) == 40
    assert len(projective_points(2, 11)) == 12
    assert len(projective_points(1, 5)) == 1


def test_projective_points_sorted_and_nonproportional():
    tab = projective_points(3, 3)
    assert tab.points == sorted(tab.points)
    # pairwise non-proportional: normalizing any representative returns itself
    for v in tab.points:
        assert tab.normalize(v) == v
        for c in (2,):
            assert tab.normalize(tuple(c * x % 3 for x in v)) == v


def test_projective_points_requires_prime():
    with pytest.raises(ValueError):
        projective_points(2, 4)


def test_projective_action_identity_and_scalar():
    tab = projective_points(4, 3)
    ident = projective_action([MatFp.identity(3, 4)], tab)[0]
    assert ident == identity(40)
    scalar = projective_action([MatFp.diagonal(3, [2, 2, 2, 2])], tab)[0]
    assert scalar == identity(40)


def test_projective_action_rejects_singular():
    tab = projective_points(2, 3)
    with pytest.raises(ZeroDivisionError):
        projective_action([MatFp(3, [[1, 1], [2, 2]])], tab)


def test_sl2_11_gives_psl2_11():
    tab = projective_points(2, 11)
    perms = projective_action(sl2_generators(11), tab)
    G = PermGroup(12, perms)
    assert G.order() == 660  # |SL2(11)| / |{+-I}| = 1320/2
    assert G.is_transitive()


def test_matrix_inverse_property():
    rng = random.Random(77)
    for p in (2, 3, 11):
        count = 0
        while count < 60:
            k = rng.randrange(1, 5)
            m = MatFp(p, [[rng.randrange(p) for _ in range(k)] for _ in range(k)])
            if m.determinant() == 0:
                continue
            count += 1
            assert m * m.inverse() == MatFp.identity(p, k)
            assert m.inverse() * m == MatFp.identity(p, k)


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        MatFp(3, [[1, 2], [2, 1]]).inverse()  # det = 1-4 = 0 mod 3


def test_sp4_generators_preserve_form():
    j = sp4_form(3)
    for g in sp4_generators(3):
        assert preserves_form(g, j)


def test_sp4_3_projective_order():
    tab = projective_points(4, 3)
    G = PermGroup(40, projective_action(sp4_generators(3), tab))
    assert G.order() == 25920  # |Sp4(3)| / 2 = 51840 / 2


def test_similitude_extension():
    tab = projective_points(4, 3)
    sp = projective_action(sp4_generators(3), tab)
    d = gsp4_similitude(3, 2)
    assert preserves_form(d, sp4_form(3), 2)
    assert d.determinant() == 1  # 4 = 1 mod 3
    ext = PermGroup(40, sp + projective_action([d], tab))
    inner = PermGroup(40, sp)
    assert inner.order() == 25920
    assert ext.order() == 51840
    # the similitude's image lies outside the inner group and normalizes it
    dperm = projective_action([d], tab)[0]
    assert not inner.contains(dperm)
    from cosetgi.perm import compose, inverse as perm_inv
    for gp in sp[:3]:
        assert inner.contains(compose(compose(perm_inv(dperm), gp), dperm))


def test_similitude_errors():
    with pytest.raises(ValueError):
        gsp4_similitude(3, 0)
    with pytest.raises(ValueError):
        gsp4_similitude(4, 2)


def test_psp4_ext_primitive_with_stabilizer_1296():
    tab = projective_points(4, 3)
    gens = projective_action(sp4_generators(3) + [gsp4_similitude(3, 2)], tab)
    G = PermGroup(40, gens)
    assert G.is_primitive()
    assert G.stabilizer(0).order() == 51840 // 40


def test_matrix_file_format_round_trip():
    m = MatFp(5, [[1, 2], [3, 4]])
    assert parse_matrix(format_matrix(m)) == m
    with pytest.raises(ParseError):
        parse_matrix("5 2 1 2 3")
    with pytest.raises(ParseError):
        parse_matrix("6 1 1")


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
