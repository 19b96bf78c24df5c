"""Named stratified algebras used throughout the test-suite and the CLI."""

from __future__ import annotations

from .algebra import GradedLieAlgebra, check_valid

# Parameterised entries with the instances exercised by ``--list`` and the suites.
DEFAULT_INSTANCES = (
    "abelian:2",
    "abelian:3",
    "heisenberg:3",
    "heisenberg:5",
    "free_two_step:3",
    "free_two_step:4",
    "engel",
    "complex_heisenberg_real",
    "product_with_abelian:heisenberg:3:1",
)

NAMES = ("abelian", "heisenberg", "free_two_step", "engel", "complex_heisenberg_real", "product_with_abelian")


def abelian(n: int) -> GradedLieAlgebra:
    if n < 1:
        raise ValueError("abelian(n) needs n >= 1")
    return GradedLieAlgebra(f"abelian{n}", [[f"X{i}" for i in range(1, n + 1)]], {})


def heisenberg(dim: int) -> GradedLieAlgebra:
    """Heisenberg algebra of odd dimension ``2m+1`` with ``[X_{2i-1}, X_{2i}] = Y``."""
    if dim < 3 or dim % 2 == 0:
        raise ValueError("heisenberg dimension must be odd and >= 3")
    m = (dim - 1) // 2
    xs = [f"X{i}" for i in range(1, 2 * m + 1)]
    br = {(f"X{2 * i - 1}", f"X{2 * i}"): {"Y": 1} for i in range(1, m + 1)}
    return GradedLieAlgebra(f"heisenberg{dim}", [xs, ["Y"]], br)


def free_two_step(m: int) -> GradedLieAlgebra:
    if m < 2:
        raise ValueError("free_two_step(m) needs m >= 2")
    xs = [f"X{i}" for i in range(1, m + 1)]
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    sep = "_" if m > 9 else ""
    ys = [f"Y{i}{sep}{j}" for i, j in pairs]
    br = {(f"X{i}", f"X{j}"): {y: 1} for (i, j), y in zip(pairs, ys)}
    return GradedLieAlgebra(f"free_two_step{m}", [xs, ys], br)


def engel() -> GradedLieAlgebra:
    return GradedLieAlgebra(
        "engel",
        [["X1", "X2"], ["X3"], ["X4"]],
        {("X1", "X2"): {"X3": 1}, ("X1", "X3"): {"X4": 1}},
    )


def complex_heisenberg_real() -> GradedLieAlgebra:
    """Realification of the complex Heisenberg algebra ``[Z1, Z2] = W``.

    With ``Z1 = X1 + i X2``, ``Z2 = X3 + i X4`` and ``W = Y1 + i Y2``.
    """
    return GradedLieAlgebra(
        "complex_heisenberg_real",
        [["X1", "X2", "X3", "X4"], ["Y1", "Y2"]],
        {
            ("X1", "X3"): {"Y1": 1},
            ("X1", "X4"): {"Y2": 1},
            ("X2", "X3"): {"Y2": 1},
            ("X2", "X4"): {"Y1": -1},
        },
    )


def product_with_abelian(base: GradedLieAlgebra, k: int) -> GradedLieAlgebra:
    """``base x R^k``; the new generators ``Z1..Zk`` join the first stratum."""
    if k < 1:
        raise ValueError("product_with_abelian needs k >= 1")
    zs = [f"Z{i}" for i in range(1, k + 1)]
    if set(zs) & set(base.basis):
        raise ValueError("base algebra already uses Z names")
    strata = [list(base.strata[0]) + zs] + [list(s) for s in base.strata[1:]]
    return GradedLieAlgebra(f"{base.name}xR{k}", strata, base.bracket_names())


def catalog_build(name: str, *params) -> GradedLieAlgebra:
    """Build a catalog algebra, e.g. ``catalog_build("heisenberg", 5)``."""
    if name == "abelian":
        alg = abelian(*_ints(params, 1, name))
    elif name == "heisenberg":
        alg = heisenberg(*_ints(params, 1, name))
    elif name == "free_two_step":
        alg = free_two_step(*_ints(params, 1, name))
    elif name == "engel":
        _ints(params, 0, name)
        alg = engel()
    elif name == "complex_heisenberg_real":
        _ints(params, 0, name)
        alg = complex_heisenberg_real()
    elif name == "product_with_abelian":
        if len(params) != 2:
            raise ValueError("product_with_abelian needs (base, k)")
        base, k = params
        if isinstance(base, str):
            base = build_from_spec(base)
        alg = product_with_abelian(base, int(k))
    else:
        raise ValueError(f"unknown catalog algebra {name!r}")
    return check_valid(alg)


def _ints(params, count, name):
    if len(params) != count:
        raise ValueError(f"{name} takes {count} parameter(s)")
    try:
        return [int(p) for p in params]
    except (TypeError, ValueError):
        raise ValueError(f"invalid parameter for {name}: {params!r}") from None


def build_from_spec(spec: str) -> GradedLieAlgebra:
    """Build from a colon-separated spec such as ``heisenberg:5`` or
    ``product_with_abelian:heisenberg:3:1``."""
    parts = spec.split(":")
    name = parts[0]
    if name == "product_with_abelian":
        if len(parts) < 3:
            raise ValueError("product_with_abelian spec is product_with_abelian:<base spec>:<k>")
        return catalog_build(name, ":".join(parts[1:-1]), parts[-1])
    return catalog_build(name, *parts[1:])


def file_stem(spec: str) -> str:
    return spec.replace(":", "_")

