"""Reference sign oracle for blade products, independent of the kernel's bit tricks.

Write the two blades as index lists, concatenate them, and count strict
inversions: that is the number of adjacent swaps a stable sort needs. Each
index that appears twice then contracts to its metric signature.
"""
from __future__ import annotations

from .algebra import AlgebraSignature, cayley_table


def oracle_product(alg: AlgebraSignature, a: int, b: int) -> tuple[int, int]:
    word = [k for k in range(alg.n) if a >> k & 1] + [k for k in range(alg.n) if b >> k & 1]
    inversions = sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])
    sign = -1 if inversions % 2 else 1
    for k in range(alg.n):
        if word.count(k) == 2:
            sign *= alg.metric(k)
    return sign, a ^ b


def kernel_mismatches(alg: AlgebraSignature) -> list[tuple[int, int]]:
    """Blade pairs where the kernel's Cayley table disagrees with the oracle."""
    table = cayley_table(alg)
    return [(a, b) for a in range(alg.dim) for b in range(alg.dim)
            if table[a][b] != oracle_product(alg, a, b)]
