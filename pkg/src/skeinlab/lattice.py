"""Free Z-modules with a skew-symmetric integer pairing."""

from __future__ import annotations

from . import intlinalg


class SkewLattice:
    """A free Z-module with basis labels and a skew-symmetric form matrix."""

    def __init__(self, form, labels=None, name=""):
        rank = len(form)
        for i in range(rank):
            if len(form[i]) != rank:
                raise ValueError("form matrix must be square")
            for j in range(rank):
                if form[i][j] != -form[j][i]:
                    raise ValueError("form must be skew-symmetric")
        self.rank = rank
        self.form = [list(row) for row in form]
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(rank)]
        self.name = name

    def pairing(self, a, b) -> int:
        return sum(
            a[i] * self.form[i][j] * b[j]
            for i in range(self.rank)
            for j in range(self.rank)
            if self.form[i][j]
        )

    def kernel_mod(self, N):
        """HNF basis of {a : (a, b) == 0 mod N for all b}. Contains N*Z^rank."""
        return intlinalg.kernel_mod(self.form, N)

    def kernel_index(self, N):
        """Index [Z^rank : kernel mod N]."""
        return intlinalg.sublattice_index(
            intlinalg.identity(self.rank), self.kernel_mod(N)
        )

    def __repr__(self):
        return f"SkewLattice(rank={self.rank}, name={self.name!r})"
