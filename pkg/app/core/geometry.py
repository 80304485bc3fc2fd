"""The pair (g, d) every invariant in class 2[C] depends on."""

from dataclasses import dataclass

from app.errors import ContractViolation


@dataclass(frozen=True)
class GeomData:
    """Genus of C and degree of the rank-2 bundle E; invariants depend on nothing else."""

    g: int
    d: int

    def __post_init__(self) -> None:
        if self.g < 0:
            raise ContractViolation(f"negative genus {self.g}")

    @property
    def D(self) -> int:
        """d + 1 - g, the exponent in (1 + sin)^D + (1 - sin)^D."""
        return self.d + 1 - self.g

    @property
    def max_subsheaf_degree(self) -> int:
        """Largest e with 1 - g + d - 2e >= 0."""
        return (1 - self.g + self.d) // 2

    @property
    def chi_min(self) -> int:
        return 2 - 2 * self.g - self.max_subsheaf_degree

    @property
    def t_exponent(self) -> int:
        """Every invariant is a rational multiple of t^(4g - 4 - 2d)."""
        return 4 * self.g - 4 - 2 * self.d
