"""Finite linear combinations of simple terms or poly-terms.

A Combination maps canonical simple (poly-)terms to positive exact
rationals. Zero coefficients are never stored, so the empty combination is
the zero and equality is equality of the stored maps.
"""

from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from PROB_TAYLOR.entity.terms import Bag, Node
from PROB_TAYLOR.exceptions import KindMismatchError


class Kind(str, Enum):
    TERM = "term"
    POLY = "poly"


def kind_of(t: Node) -> Kind:
    return Kind.POLY if isinstance(t, Bag) else Kind.TERM


Entries = Union[Mapping[Node, Fraction], Iterable[Tuple[Node, Fraction]]]


class Combination:
    """Immutable formal sum  c1.s1 + ... + cn.sn  with ci > 0."""

    __slots__ = ("_entries", "_kind", "_hash")

    def __init__(self, entries: Optional[Entries] = None, kind: Optional[Kind] = None):
        pairs = entries.items() if isinstance(entries, Mapping) else (entries or ())
        merged: Dict[Node, Fraction] = {}
        for term, coefficient in pairs:
            coefficient = Fraction(coefficient)
            if coefficient < 0:
                raise ValueError(f"negative coefficient {coefficient}")
            if coefficient:
                merged[term] = merged.get(term, Fraction(0)) + coefficient
        kinds = {kind_of(t) for t in merged}
        if len(kinds) > 1:
            raise KindMismatchError("combination mixes terms and poly-terms")
        if kinds:
            found = kinds.pop()
            if kind is not None and kind != found:
                raise KindMismatchError(f"expected a {kind.value} combination, got {found.value}")
            kind = found
        self._entries = merged
        self._kind = kind or Kind.TERM
        self._hash = None

    # construction

    @classmethod
    def of(cls, term: Node, coefficient=1) -> "Combination":
        return cls({term: Fraction(coefficient)})

    @classmethod
    def zero(cls, kind: Kind = Kind.TERM) -> "Combination":
        return cls(kind=kind)

    # inspection

    @property
    def kind(self) -> Kind:
        return self._kind

    def coefficient(self, term: Node) -> Fraction:
        return self._entries.get(term, Fraction(0))

    def support(self) -> list:
        """Support in the deterministic structural order."""
        return sorted(self._entries, key=lambda t: t.key)

    def items(self) -> list:
        return [(t, self._entries[t]) for t in self.support()]

    def as_dict(self) -> Dict[Node, Fraction]:
        return dict(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def mass(self) -> Fraction:
        return sum(self._entries.values(), Fraction(0))

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Node]:
        return iter(self.support())

    def __contains__(self, term: Node) -> bool:
        return term in self._entries

    # algebra

    def __add__(self, other: "Combination") -> "Combination":
        if not isinstance(other, Combination):
            return NotImplemented
        if self._entries and other._entries and self._kind != other._kind:
            raise KindMismatchError("cannot add terms to poly-terms")
        kind = self._kind if self._entries else other._kind
        return Combination(list(self._entries.items()) + list(other._entries.items()), kind)

    def scale(self, factor) -> "Combination":
        factor = Fraction(factor)
        return Combination({t: c * factor for t, c in self._entries.items()}, self._kind)

    def map_linear(self, f: Callable[[Node], "Combination"], kind: Optional[Kind] = None) -> "Combination":
        """Extend f: term -> Combination linearly to self."""
        pairs = []
        for term, c in self._entries.items():
            for image, d in f(term)._entries.items():
                pairs.append((image, c * d))
        return Combination(pairs, kind or self._kind)

    def restrict(self, keep: Callable[[Node], bool]) -> "Combination":
        return Combination({t: c for t, c in self._entries.items() if keep(t)}, self._kind)

    # comparison

    def __eq__(self, other) -> bool:
        if not isinstance(other, Combination):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{c}: {t!r}" for t, c in self.items())
        return f"Combination({{{inner}}})"
