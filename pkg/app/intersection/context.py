"""Quot x Sym fixed-component context."""

from dataclasses import dataclass

from app.algebra.cohring import RingContext


@dataclass(frozen=True)
class QuotContext:
    """Quot^e E x Sym^n C for a rank-N degree-d bundle E over a genus-g curve."""

    g: int
    N: int = 2
    d: int = 0
    e: int = 0
    n: int = 0

    @property
    def vdim1(self) -> int:
        """Expected dimension of the Quot factor, (1-g)(N-1) + d - N e."""
        return (1 - self.g) * (self.N - 1) + self.d - self.N * self.e

    @property
    def vdim(self) -> int:
        return self.vdim1 + self.n

    def ring(self, pruned: bool = True) -> RingContext:
        """Ring context truncated at the virtual dimension of Quot x Sym."""
        return RingContext(
            g=self.g,
            maxdeg=self.vdim,
            budgets=(self.vdim1, self.n) if pruned else None,
        )

    @classmethod
    def with_vdim1(cls, g: int, vdim1: int, n: int = 0, N: int = 2) -> "QuotContext":
        """Context with e = 0 and the degree chosen to give the requested vdim1."""
        return cls(g=g, N=N, d=vdim1 - (1 - g) * (N - 1), e=0, n=n)
