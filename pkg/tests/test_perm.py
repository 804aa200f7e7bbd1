import random

import pytest

from cosetgi.errors import DegreeMismatchError, ParseError
from cosetgi.perm import (
    Permutation,
    compose,
    conjugate,
    cycle_type,
    format_cycles,
    from_images,
    identity,
    inverse,
    order,
    parse_cycles,
    power,
)


def random_perm(rng, degree):
    images = list(range(degree))
    rng.shuffle(images)
    return Permutation(images)


def test_parse_basic():
    a = parse_cycles("(5,6)(7,8,9,10)", 10)
    assert a.images == (0, 1, 2, 3, 5, 4, 7, 8, 9, 6)
    assert parse_cycles("()", 4) == identity(4)
    assert parse_cycles("", 4) == identity(4)
    assert parse_cycles("(1,2,3)", 3).images == (1, 2, 0)


def test_parse_whitespace_and_fixed_points():
    assert parse_cycles(" ( 1 , 2 ) ", 3) == parse_cycles("(1,2)", 3)
    assert parse_cycles("(2)", 3) == identity(3)


@pytest.mark.parametrize("text", ["(1,2)(2,3)", "(1,1)"])
def test_parse_repeated_point(text):
    with pytest.raises(ParseError):
        parse_cycles(text, 5)


def test_parse_out_of_range():
    with pytest.raises(ParseError):
        parse_cycles("(1,6)", 5)
    with pytest.raises(ParseError):
        parse_cycles("(0,1)", 5)


@pytest.mark.parametrize("text", ["(1,2", "1,2)", "(1 2)", "(,1)", "(1,)"])
def test_parse_malformed(text):
    with pytest.raises(ParseError):
        parse_cycles(text, 5)


def test_parse_error_carries_position():
    try:
        parse_cycles("(1,2)(3,9)", 5)
    except ParseError as e:
        assert e.position == 8
    else:
        pytest.fail("expected ParseError")


def test_compose_convention_left_to_right():
    p = parse_cycles("(1,2)", 3)
    q = parse_cycles("(2,3)", 3)
    pq = compose(p, q)
    for point in range(3):
        assert pq.apply(point) == q.apply(p.apply(point))


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        compose(identity(3), identity(4))


def test_order_of_example_element():
    a = parse_cycles("(5,6)(7,8,9,10)", 10)
    # independent oracle: lcm of observed cycle lengths 2 and 4
    assert order(a) == 4


def test_inverse_identity():
    assert inverse(identity(6)) == identity(6)


def test_power_order_property():
    rng = random.Random(12345)
    for _ in range(100):
        degree = rng.randrange(1, 13)
        p = random_perm(rng, degree)
        m = order(p)
        assert power(p, m) == identity(degree)
        for k in range(1, m):
            assert power(p, k) != identity(degree)


def test_power_negative():
    rng = random.Random(7)
    p = random_perm(rng, 9)
    assert power(p, -3) == inverse(power(p, 3))


def test_cycle_type_examples():
    a = parse_cycles("(5,6)(7,8,9,10)", 10)
    b = compose(parse_cycles("(1,2)(3,4)", 10), a)
    assert cycle_type(a) == (2, 4)
    assert cycle_type(b) == (2, 2, 2, 4)
    assert cycle_type(identity(10)) == ()


def test_cycle_type_conjugation_invariant():
    rng = random.Random(99)
    for _ in range(50):
        degree = rng.randrange(2, 12)
        p = random_perm(rng, degree)
        q = random_perm(rng, degree)
        assert cycle_type(conjugate(p, q)) == cycle_type(p)


def test_round_trip_format_parse():
    rng = random.Random(4242)
    for _ in range(50):
        degree = rng.randrange(1, 15)
        p = random_perm(rng, degree)
        assert parse_cycles(format_cycles(p), degree) == p


def test_format_smallest_point_first():
    p = parse_cycles("(3,1)(6,5)", 6)
    assert format_cycles(p) == "(1,3)(5,6)"
    assert format_cycles(identity(4)) == "()"


def test_associativity_and_two_sided_inverse():
    rng = random.Random(321)
    for _ in range(30):
        degree = rng.randrange(1, 12)
        p, q, r = (random_perm(rng, degree) for _ in range(3))
        assert compose(compose(p, q), r) == compose(p, compose(q, r))
        assert compose(p, inverse(p)) == identity(degree)
        assert compose(inverse(p), p) == identity(degree)


def test_from_images_validation():
    assert from_images([1, 0, 2]) == parse_cycles("(1,2)", 3)
    with pytest.raises(ValueError):
        from_images([0, 0, 1])
    with pytest.raises(DegreeMismatchError):
        from_images([0, 1], degree=3)
