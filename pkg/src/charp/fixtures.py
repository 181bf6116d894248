"""Named places used by the corpus, the CLI and the tests.

K1, K2 and K3 are the three DVRs over C = F_5(t) whose formal smoothness
differs although all have residue field C(t^(1/5)):

* K1: Frac((C[u]/(u^5 - t))[pi]) at pi, where t is already a 5th power;
* K2: C(X) at X^5 - t;
* K3: Frac(C[X, pi]/(X^5 - pi^2 - t)) at pi, where t - X^5 has value 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .exactfield.presentation import FieldPresentation
from .valuation import PlacePresentation, place_from_prime


@dataclass(frozen=True)
class Fixture:
    name: str
    build: Callable[[], PlacePresentation]
    subfield: Tuple[str, ...]
    basis: Tuple[str, ...]
    smooth: Optional[bool] = None
    note: str = ""

    def place(self) -> PlacePresentation:
        return _built(self.name)


def _place(p, gens, rels, prime, constants, label, tower=None):
    tower = tower if tower is not None else ([list(constants)] if constants else None)
    A = FieldPresentation(p, gens, rels, tower)
    return place_from_prime(A, prime, constants=constants, label=label)


FIXTURES: Dict[str, Fixture] = {}


def _register(name, builder, subfield, basis, smooth=None, note=""):
    FIXTURES[name] = Fixture(name, builder, tuple(subfield), tuple(basis), smooth, note)


_register("K1", lambda: _place(5, ["t", "u", "pi"], ["u^5 - t"], ["pi"], ("t",), "K1: (pi)",
                               tower=[["t"], ["t", "u"]]),
          ["t"], ["t"], False, "t is a 5th power in the fraction field")
_register("K2", lambda: _place(5, ["t", "X"], [], ["X^5 - t"], ("t",), "K2: (X^5 - t)"),
          ["t"], ["t"], True, "uniformiser X^5 - t")
_register("K3", lambda: _place(5, ["t", "X", "pi"], ["X^5 - pi^2 - t"], ["pi"], ("t",), "K3: (pi)"),
          ["t"], ["t"], False, "t - X^5 = -pi^2 has value 2")
_register("K2'", lambda: _place(5, ["t", "Z"], [], ["Z^5 - t - 1"], ("t",), "K2': (Z^5 - t - 1)"),
          ["t"], ["t"], True, "K2 with Z = X + 1")
_register("F5x@x", lambda: _place(5, ["x"], [], ["x"], (), "(x)"), [], [], True)
_register("F5x@x2+2", lambda: _place(5, ["x"], [], ["x^2 + 2"], (), "(x^2 + 2)"), [], [], True,
          "residue field F_25")
_register("F5tx@x", lambda: _place(5, ["t", "x"], [], ["x"], ("t",), "(x)"), ["t"], ["t"], True)
_register("F5tx@x-t", lambda: _place(5, ["t", "x"], [], ["x - t"], ("t",), "(x - t)"), ["t"], ["t"], True)
_register("F5tx@x2-t", lambda: _place(5, ["t", "x"], [], ["x^2 - t"], ("t",), "(x^2 - t)"), ["t"], ["t"], True,
          "separable residue extension of degree 2")
_register("F5tx@x5-t2", lambda: _place(5, ["t", "x"], [], ["x^5 - t^2"], ("t",), "(x^5 - t^2)"), ["t"], ["t"],
          True, "purely inseparable residue field, uniformiser x^5 - t^2")
_register("K3cube", lambda: _place(5, ["t", "X", "pi"], ["X^5 - pi^3 - t"], ["pi"], ("t",), "(pi)"),
          ["t"], ["t"], False, "t - X^5 has value 3")
_register("F5stx@x", lambda: _place(5, ["s", "t", "x"], [], ["x"], ("s", "t"), "(x)"), ["s", "t"], ["s", "t"],
          True)
_register("F5stX@X5-t", lambda: _place(5, ["s", "t", "X"], [], ["X^5 - t"], ("s", "t"), "(X^5 - t)"),
          ["s", "t"], ["s", "t"], True, "K2 with an extra transcendental constant")
_register("F5stX@pi", lambda: _place(5, ["s", "t", "X", "pi"], ["X^5 - s*pi^2 - t"], ["pi"], ("s", "t"), "(pi)"),
          ["s", "t"], ["s", "t"], False, "K3 with an extra constant")
_register("F3tX@X3-t", lambda: _place(3, ["t", "X"], [], ["X^3 - t"], ("t",), "(X^3 - t)"), ["t"], ["t"], True)
_register("F3K3", lambda: _place(3, ["t", "X", "pi"], ["X^3 - pi^2 - t"], ["pi"], ("t",), "(pi)"),
          ["t"], ["t"], False)
_register("F2tX@X2-t", lambda: _place(2, ["t", "X"], [], ["X^2 - t"], ("t",), "(X^2 - t)"), ["t"], ["t"], True)
_register("F2K1", lambda: _place(2, ["t", "u", "pi"], ["u^2 - t"], ["pi"], ("t",), "(pi)",
                                 tower=[["t"], ["t", "u"]]), ["t"], ["t"], False)
_register("curve@origin", lambda: _place(5, ["x", "y"], ["y^2 - x^3 - x"], ["x", "y"], (), "(x, y)"), [], [], True,
          "point of y^2 = x^3 + x")
_register("F5tx@t", lambda: _place(5, ["t", "x"], [], ["t"], (), "(t)"), [], [], True,
          "C = F_5 only, since t is not a unit here")


@lru_cache(maxsize=None)
def _built(name: str) -> PlacePresentation:
    return FIXTURES[name].build()


def fixture(name: str) -> PlacePresentation:
    return _built(name)


def names() -> List[str]:
    return list(FIXTURES)


EMBEDDING_PAIRS = (
    ("F5tx@x", "F5tx@x", {"t": "t", "x": "x"}),
    ("K2", "K2'", {"t": "t", "X": "Z - 1"}),
    ("F5x@x", "F5x@x2+2", {"x": "0"}),
)
