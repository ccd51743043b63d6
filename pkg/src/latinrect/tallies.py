"""Operation tallies for exact-integer formula evaluation.

The n-dependent cost of one formula term is the chain of big-integer
multiplications assembling the product of n per-column factors.  Those
land in the ``assembly`` buckets, under two accountings: the
multiplications actually performed (square-and-multiply powering plus
combining the per-class powers) and the naive model that builds each
power g^s with s - 1 multiplications.  Everything else a term needs --
block sums, the column-choice polynomial, multinomial quotients,
coefficient scaling -- costs a fixed number of operations once k is
fixed; its multiplications are tallied in ``mults_inner`` and its
additions in ``adds``.  Quotients of factorial-table entries count as
multiplications (same cost class).
"""

from dataclasses import dataclass


@dataclass
class OpTally:
    """Mutable counters; confined to one evaluation context."""

    adds: int = 0
    mults_inner: int = 0
    mults_assembly: int = 0
    mults_assembly_naive: int = 0

    @property
    def mults_total(self) -> int:
        return self.mults_inner + self.mults_assembly

    def merge(self, other: "OpTally") -> None:
        self.adds += other.adds
        self.mults_inner += other.mults_inner
        self.mults_assembly += other.mults_assembly
        self.mults_assembly_naive += other.mults_assembly_naive


def powered(base: int, exp: int, tally: OpTally | None = None):
    """base**exp by square-and-multiply, with 0**0 == 1.

    Actual multiplications go to the assembly bucket; the naive model is
    credited max(exp - 1, 0) multiplications for the same power.
    """
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    if exp == 0:
        return 1
    if tally is not None:
        tally.mults_assembly_naive += exp - 1
    acc = None
    sq = base
    e = exp
    while True:
        if e & 1:
            if acc is None:
                acc = sq
            else:
                acc = acc * sq
                if tally is not None:
                    tally.mults_assembly += 1
        e >>= 1
        if not e:
            break
        sq = sq * sq
        if tally is not None:
            tally.mults_assembly += 1
    return acc


def assembly_product(values, tally: OpTally | None = None):
    """Product of the per-class powers; empty product is 1."""
    prod = None
    for v in values:
        if prod is None:
            prod = v
        else:
            prod = prod * v
            if tally is not None:
                tally.mults_assembly += 1
                tally.mults_assembly_naive += 1
    return 1 if prod is None else prod
