import random

import pytest

from tensorcat.fields import (DivisionByZero, Embedding, Field, FieldError,
                              FieldMismatch, NotAnEmbedding, embed)

Q = Field.rationals()
F7 = Field.prime(7)


def test_inverse_in_f7():
    assert F7.scalar(3).inv() == F7.scalar(5)
    assert F7.scalar(3) * F7.scalar(5) == F7.one()


def test_rational_addition():
    assert Q.scalar("1/2") + Q.scalar("1/3") == Q.scalar("5/6")


def test_inverse_in_quadratic_extension():
    K = Field.extension(0, [-5, 0, 1])          # Q[a]/(a^2 - 5)
    a = K.gen()
    inv = a.inv()
    assert a * inv == K.one()
    assert inv == K.scalar([0, "1/5"])


def test_inv_zero_raises():
    with pytest.raises(DivisionByZero):
        Q.zero().inv()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Q.one() + F7.one()


def test_characteristic_must_be_prime():
    with pytest.raises(FieldError):
        Field(6)


def test_reducible_minpoly_rejected():
    with pytest.raises(FieldError):
        Field.extension(0, [-1, 0, 1])          # t^2 - 1 splits


def _random_scalar(field, rng):
    if field.char == 0:
        num = rng.randint(-20, 20)
        den = rng.randint(1, 9)
        base = [f"{num}/{den}" for _ in range(field.deg)]
        return field.scalar([f"{rng.randint(-20, 20)}/{rng.randint(1, 9)}"
                             for _ in range(field.deg)])
    return field.scalar([rng.randrange(field.char)
                         for _ in range(field.deg)])


@pytest.mark.parametrize("field", [
    Q, F7, Field.prime(2),
    Field.extension(0, [-5, 0, 1]),
    Field.extension(2, [1, 1, 1]),              # F_4
    Field.extension(0, [-1, -1, 1], gen_name="phi"),
])
def test_field_axioms_random(field):
    rng = random.Random(7)
    for _ in range(40):
        a, b, c = (_random_scalar(field, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        if a:
            assert a * a.inv() == field.one()
        assert a + (-a) == field.zero()


def test_embed_f2_into_f4():
    F2 = Field.prime(2)
    F4 = Field.extension(2, [1, 1, 1])
    e = Embedding(F2, F4)
    assert e(F2.one()) == F4.one()


def test_embed_galois_conjugate():
    K = Field.extension(0, [-5, 0, 1])
    a = K.gen()
    e = Embedding(K, K, -a)                     # a -> -a
    assert e(a) == -a
    x = K.scalar([1, 2])
    assert e(x) == K.scalar([1, -2])


def test_embed_f4_into_f16():
    from tensorcat.poly import Poly, factor
    F4 = Field.extension(2, [1, 1, 1])
    F16 = Field.extension(2, [1, 1, 0, 0, 1])   # t^4 + t + 1
    f = Poly(F16, [F16.scalar(c) for c in F4.minpoly])
    roots = [(-g.coeffs[0]) for g, _ in factor(f) if g.degree == 1]
    assert roots, "minpoly of F4 must split in F16"
    e = Embedding(F4, F16, roots[0])
    rng = random.Random(3)
    for _ in range(20):
        x = _random_scalar(F4, rng)
        y = _random_scalar(F4, rng)
        assert e(x + y) == e(x) + e(y)
        assert e(x * y) == e(x) * e(y)


def test_embed_rejects_non_root():
    K = Field.extension(0, [-5, 0, 1])
    with pytest.raises(NotAnEmbedding):
        Embedding(K, K, K.one())
    with pytest.raises(NotAnEmbedding):
        embed(Q.one(), Q, F7)


def test_embed_preserves_ops_randomized():
    K = Field.extension(0, [-5, 0, 1])
    e = Embedding(K, K, K.gen())
    rng = random.Random(11)
    for _ in range(25):
        x, y = _random_scalar(K, rng), _random_scalar(K, rng)
        assert e(x * y) == e(x) * e(y)
        assert e(x + y) == e(x) + e(y)


def test_scalar_serialization_roundtrip():
    K = Field.extension(0, [-1, -1, 1])
    x = K.scalar(["3/2", "-7/5"])
    assert K.scalar(x.serialize()) == x
    F3 = Field.prime(3)
    y = F3.scalar(2)
    assert F3.scalar(y.serialize()) == y
