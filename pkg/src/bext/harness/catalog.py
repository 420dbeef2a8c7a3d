"""Built-in example towers with their expected invariants."""

from __future__ import annotations

from .scenario import Scenario, parse_scenario

_SOURCES = {
    "ex0": (
        """
        name ex0
        # F_16 over F_2
        base p=2
        step a: a^4 + a + 1
        auto a -> a^2
        check all
        """,
        {"n": 4, "group_order": 4, "dim_D": 4, "dim_DxG": 16, "is_G": True, "is_D": False, "is_B": True},
    ),
    "ex1": (
        """
        name ex1
        # square root of t
        base p=2 vars=t
        step u: u^2 + t
        check all
        """,
        {"n": 2, "group_order": 1, "dim_D": 4, "dim_DxG": 4, "is_G": False, "is_D": True, "is_B": True, "dim_Delta": 4},
    ),
    "ex2": (
        """
        name ex2
        # Artin-Schreier
        base p=2 vars=t
        step s: s^2 + s + t
        auto s -> s + 1
        check all
        """,
        {"n": 2, "group_order": 2, "dim_D": 2, "dim_LxG": 4, "dim_DxG": 4, "is_G": True, "is_D": False, "is_B": True, "conormal_dim": 1},
    ),
    "ex3": (
        """
        name ex3
        # ex1 and ex2 together: normal, neither Galois nor purely inseparable
        base p=2 vars=t
        step u: u^2 + t
        step s: s^2 + s + t
        auto u -> u; s -> s + 1
        check all
        """,
        {"n": 4, "group_order": 2, "dim_D": 8, "dim_LxG": 8, "dim_DxG": 16, "is_G": False, "is_D": False, "is_B": True, "conormal_dim": 1},
    ),
    "ex4": (
        """
        name ex4
        # separable cubic, not normal
        base p=2 vars=t
        step y: y^3 + y + t
        check all
        """,
        {"n": 3, "group_order": 1, "dim_D": 3, "dim_DxG": 3, "is_G": False, "is_D": False, "is_B": False, "conormal_dim": 3},
    ),
    "ex5": (
        """
        name ex5
        # L = F_2(z, xz + y) over K = F_2(x^2, y^2, z^4)
        ambient p=2 vars=x,y,z k=x^2,y^2,z^4 l=z,x*z+y
        check all
        budget dct=20
        """,
        {"n": 8, "exponent": 2, "group_order": 1, "dim_D": 64, "dim_DxG": 64, "dim_Delta": 32, "is_D": True, "is_B": True},
    ),
    "cube_root": (
        """
        name cube_root
        base p=3 vars=t
        step v: v^3 - t
        check all
        """,
        {"n": 3, "group_order": 1, "dim_D": 9, "is_D": True, "is_B": True},
    ),
    "as3": (
        """
        name as3
        base p=3 vars=t
        step v: v^3 - v - t
        auto v -> v + 1
        check all
        """,
        {"n": 3, "group_order": 3, "dim_D": 3, "dim_DxG": 9, "is_G": True, "is_B": True},
    ),
    "mixed": (
        """
        name mixed
        # square root of t, then a cubic over it: not normal, L^G_dif strictly between
        base p=2 vars=t
        step u: u^2 + t
        step y: y^3 + y + u
        check all
        """,
        {"n": 6, "is_B": False},
    ),
}


def _dedent(text: str) -> str:
    return "\n".join(line.strip() for line in text.strip().splitlines()) + "\n"


def builtin_names() -> list:
    return list(_SOURCES)


def builtin(name: str) -> Scenario:
    src, expect = _SOURCES[name]
    s = parse_scenario(_dedent(src))
    s.expect = dict(expect)
    return s


def builtin_catalog() -> list:
    return [builtin(name) for name in _SOURCES]
