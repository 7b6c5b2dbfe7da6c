"""Integer power series, exact polynomials or truncated mod t^order."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class TruncatedSeries:
    """Integer series ``sum coeffs[i] t^i``.

    ``order=None`` means the coefficients describe an exact polynomial;
    otherwise only the coefficients below ``t^order`` are known.
    """

    coeffs: tuple = ()
    order: int | None = None

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        if self.order is not None:
            if self.order < 0:
                raise ValueError("truncation order must be >= 0")
            c = c[: self.order]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def poly(cls, coeffs: Iterable[int]) -> "TruncatedSeries":
        return cls(tuple(coeffs), None)

    @classmethod
    def monomial(cls, c: int, degree: int) -> "TruncatedSeries":
        return cls((0,) * degree + (c,), None)

    @classmethod
    def from_dict(cls, terms: dict, order: int | None = None) -> "TruncatedSeries":
        if not terms:
            return cls((), order)
        top = max(terms)
        return cls(tuple(terms.get(i, 0) for i in range(top + 1)), order)

    def coefficient(self, i: int) -> int:
        if self.order is not None and i >= self.order:
            raise ValueError(f"coefficient of t^{i} unknown beyond truncation order {self.order}")
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __getitem__(self, i: int) -> int:
        return self.coefficient(i)

    @property
    def degree(self) -> int:
        """Degree of the highest nonzero known coefficient (-1 for zero)."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def nonzero_terms(self) -> list[tuple[int, int]]:
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def _join_order(self, other):
        if self.order is None:
            return other.order
        if other.order is None:
            return self.order
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = max(len(self.coeffs), len(other.coeffs))
        c = [self.coefficient_raw(i) + other.coefficient_raw(i) for i in range(n)]
        return TruncatedSeries(tuple(c), self._join_order(other))

    def __neg__(self):
        return TruncatedSeries(tuple(-x for x in self.coeffs), self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if isinstance(other, int):
            return TruncatedSeries(tuple(other * x for x in self.coeffs), self.order)
        order = self._join_order(other)
        n = len(self.coeffs) + len(other.coeffs) - 1
        if order is not None:
            n = min(n, order)
        c = [0] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                c[i + j] += a * b
        return TruncatedSeries(tuple(c), order)

    __rmul__ = __mul__

    def coefficient_raw(self, i: int) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def truncate(self, order: int) -> "TruncatedSeries":
        if self.order is not None and order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs, order)

    def alternate(self) -> "TruncatedSeries":
        """Substitute ``t -> -t``."""
        return TruncatedSeries(tuple(x if i % 2 == 0 else -x for i, x in enumerate(self.coeffs)),
                               self.order)

    def inverse(self, order: int) -> "TruncatedSeries":
        """Multiplicative inverse mod ``t^order``; needs constant term 1."""
        if self.coefficient_raw(0) != 1:
            raise ValueError("series inverse needs constant term 1")
        if self.order is not None and order > self.order:
            raise ValueError("requested order exceeds known coefficients")
        inv = [0] * order
        if order:
            inv[0] = 1
        for n in range(1, order):
            inv[n] = -sum(self.coefficient_raw(i) * inv[n - i] for i in range(1, n + 1))
        return TruncatedSeries(tuple(inv), order)

    def equals_mod(self, other: "TruncatedSeries", order: int) -> bool:
        return all(self.coefficient_raw(i) == other.coefficient_raw(i) for i in range(order))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                var = "t" if i == 1 else f"t^{i}"
                body = var if abs(c) == 1 else f"{abs(c)}*{var}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if self.order is not None:
            parts.append(("+", f"O(t^{self.order})"))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {"coefficients": list(self.coeffs), "order": self.order, "text": str(self)}

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        return cls(tuple(data["coefficients"]), data["order"])


ZERO = TruncatedSeries()
ONE = TruncatedSeries((1,))
