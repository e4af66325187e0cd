"""The verification fixtures: four local towers and two global algebras."""

from __future__ import annotations

from .local import Tower, make_tower
from .numring import GlobalAlgebraSpec, NumberRingSpec, RamifiedPrime

LOCAL_FIXTURES = {
    # name: (p, r, eisenstein coefficients, n)
    "A": (3, 1, [-3, 1], 2),
    "B": (3, 1, [-3, 0, 1], 2),
    "C": (2, 1, [-2, 1], 2),
    "D": (2, 1, [-2, 0, 1], 3),
}

GLOBAL_FIXTURES = {
    # Hurwitz quaternions: center Z, ramified at (2) with e = 2
    "E": ((0, 1), ((2, 0, 2),)),
    # Gaussian integers, no ramification
    "F": ((1, 0, 1), ()),
}


def tower(name: str, K=None, max_degree=12) -> Tower:
    p, r, P, n = LOCAL_FIXTURES[name]
    return make_tower(p, r, P, n, K=K, max_degree=max_degree)


def global_spec(name: str) -> GlobalAlgebraSpec:
    center, rams = GLOBAL_FIXTURES[name]
    return GlobalAlgebraSpec(
        center=NumberRingSpec(center),
        ramification=tuple(
            RamifiedPrime(p=p, factor_index=idx, e=e) for (p, idx, e) in rams
        ),
    )


def tower_toml(name: str) -> str:
    p, r, P, n = LOCAL_FIXTURES[name]
    eis = ", ".join(f"[{c}]" for c in P)
    return f"[tower]\np = {p}\nr = {r}\neisenstein = [{eis}]\nn = {n}\n"


def global_toml(name: str) -> str:
    center, rams = GLOBAL_FIXTURES[name]
    lines = [f"[global]\ncenter = [{', '.join(str(c) for c in center)}]"]
    for p, idx, e in rams:
        lines.append(
            f"\n[[global.ramification]]\np = {p}\nfactor_index = {idx}\ne = {e}"
        )
    return "\n".join(lines) + "\n"
