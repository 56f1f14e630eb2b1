import random
from fractions import Fraction

import sympy as sp

from cocal import catalog, linalg
from cocal.frames import heisenberg_kernel_frame, kernel_frame_3d
from cocal.surd import Surd, parse_scalar


def test_surd_arithmetic_matches_sympy():
    a = Surd.sqrt(2) * 3 + Fraction(1, 2)
    b = Surd.sqrt(Fraction(3, 8)) - 1
    sa, sb = sp.sympify(str(a)), sp.sympify(str(b))
    assert sp.simplify(sp.sympify(str(a * b)) - sa * sb) == 0
    assert sp.simplify(sp.sympify(str(a / b)) - sa / sb) == 0
    assert abs(float(a * b) - float(a) * float(b)) < 1e-12
    assert abs(float(a / b) - float(a) / float(b)) < 1e-12
    assert sp.nsimplify(sp.sympify(str(Surd.sqrt(Fraction(3, 8))))) == sp.sqrt(sp.Rational(3, 8))


def test_surd_sign_and_text():
    x = Surd.sqrt(2) - Fraction(141, 100)
    assert x.sign() == 1
    assert (Surd.sqrt(3) * 2 - Surd.sqrt(12)).is_rational() and not (Surd.sqrt(3) * 2 - Surd.sqrt(12))
    assert parse_scalar(str(Surd.sqrt(6) / 4 + 1)) == Surd.sqrt(6) / 4 + 1


def test_linear_algebra_against_sympy():
    rng = random.Random(12)
    for _ in range(20):
        m = [[Fraction(rng.randint(-3, 3)) for _ in range(5)] for _ in range(4)]
        assert linalg.rank(m) == sp.Matrix(m).rank()
        for v in linalg.nullspace(m):
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
        sq = [r[:4] for r in m]
        if sp.Matrix(sq).det() != 0:
            assert linalg.det(sq) == sp.Matrix(sq).det()
            assert linalg.matmul(sq, linalg.inverse(sq)) == linalg.identity(4)


def test_definiteness_and_inertia():
    assert linalg.definiteness([[2, 1], [1, 2]]) == 1
    assert linalg.definiteness([[-2, 1], [1, -2]]) == -1
    assert linalg.definiteness([[1, 2], [2, 1]]) == 0
    assert linalg.inertia([[1, 0, 0], [0, -1, 0], [0, 0, 0]]) == (1, 1, 1)


def test_heisenberg_kernel_frame_normal_form():
    fr = heisenberg_kernel_frame(catalog.parse_name("A_{4,9}^{-1/2}").algebra())
    assert fr.trace == Fraction(1, 2)
    assert sorted([fr.f[0][0], fr.f[1][1]]) == [Fraction(-1, 2), 1]


def test_kernel_frame_3d():
    k = kernel_frame_3d(catalog.parse_name("r_{3,-1/4}").algebra())
    assert k.det / k.trace ** 2 == Fraction(-1, 4) / Fraction(3, 4) ** 2
