"""The extended genus field of a cyclic Kummer extension K = k(D^(1/n)).

The extended genus field of K over k is the explicit abelian extension

    F_{q^n}(T, P_1^(1/e_1), ..., P_r^(1/e_r)),

built from the constant field extension of degree n and one root per
ramified finite prime, taken to its ramification index.  It is returned
as a structured description (no arithmetic happens inside it): everything
downstream only needs the constant degree and the (P_i, e_i) components.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kummer import KummerDatum, ramification_index
from .polyring import MonicIrreducible

__all__ = [
    "GenusField",
    "genus_field",
    "genus_degrees",
    "ambiguous_class_count",
    "galois_structure",
]


@dataclass(frozen=True)
class GenusField:
    """Structured description of the extended genus field."""

    constant_degree: int
    components: tuple[tuple[MonicIrreducible, int], ...]

    @property
    def degree_over_k(self) -> int:
        out = self.constant_degree
        for _, e_i in self.components:
            out *= e_i
        return out

    def format(self, q: int) -> str:
        parts = ["T"]
        for prime, e_i in self.components:
            text = str(prime)
            if "+" in text or "-" in text:
                text = f"({text})"
            parts.append(f"{text}^(1/{e_i})")
        return f"GF({q**self.constant_degree})({', '.join(parts)})"


def genus_field(datum: KummerDatum) -> GenusField:
    """Components are exactly the ramified finite primes with their indices."""
    components = tuple(
        (prime, ramification_index(datum, prime)) for prime, _ in datum.ram
    )
    return GenusField(constant_degree=datum.n, components=components)


def genus_degrees(datum: KummerDatum) -> tuple[int, int]:
    """([genus field : k], [genus field : K]) = (n * prod e_i, prod e_i)."""
    product_e = 1
    for prime, _ in datum.ram:
        product_e *= ramification_index(datum, prime)
    return datum.n * product_e, product_e


def ambiguous_class_count(datum: KummerDatum) -> int:
    """Number of extended ideal classes of O_K fixed by Gal(K/k): prod e_i.

    This equals the degree of the extended genus field over K, which is
    asserted here so the two computations can never drift apart.
    """
    count = 1
    for prime, _ in datum.ram:
        count *= ramification_index(datum, prime)
    if count != genus_degrees(datum)[1]:
        raise AssertionError("ambiguous class count disagrees with the genus degree")
    return count


def galois_structure(datum: KummerDatum) -> list[int]:
    """Abelian invariants [n, e_1, ..., e_r] of Gal(genus field / k), 1s dropped."""
    invariants = [datum.n]
    for prime, _ in datum.ram:
        invariants.append(ramification_index(datum, prime))
    return [inv for inv in invariants if inv > 1]
