"""Association measures on 2x2 probability tables.

Each measure is available in direct form (on a ProbTable) and, where a
closed margin-coordinate form exists, via ``eval_in_coords``.  Closed-form
limits of the margin weighting functions along a single coordinate axis
are in ``margin_limit``.

Conventions: mutual information, entropy and the HS exponent use base-2
logarithms; the coordinates themselves are natural-log scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "MeasureKind",
    "UndefinedKappa",
    "UnsupportedKind",
    "CLI_NAMES",
    "odds_ratio",
    "yule_q",
    "yule_y",
    "d_raw",
    "d_prime",
    "corr_r",
    "mut_inf",
    "s_mut_inf",
    "kappa",
    "entropy",
    "entropy_diag",
    "hs",
    "evaluate",
    "eval_in_coords",
    "margin_limit",
]

_LN2 = math.log(2.0)

TAGS = frozenset(
    {
        "odds_ratio",
        "yule_q",
        "yule_y",
        "d_raw",
        "d_prime",
        "corr_r",
        "mut_inf",
        "s_mut_inf",
        "kappa",
        "entropy",
        "entropy_diag",
        "hs",
    }
)

DEFAULT_HS_N = 4.0


class UndefinedKappa(ArithmeticError):
    """Cohen's kappa is undefined: chance agreement equals 1."""


class UnsupportedKind(ValueError):
    """The requested measure has no formula of the requested kind."""


@dataclass(frozen=True)
class MeasureKind:
    """A measure selector; ``n`` is the weighting exponent, used by hs only."""

    tag: str
    n: float = field(default=DEFAULT_HS_N)

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown measure tag {self.tag!r}")
        n = float(self.n)
        if self.tag == "hs" and not (math.isfinite(n) and n >= 0.0):
            raise ValueError(f"hs needs n >= 0, got {self.n!r}")
        object.__setattr__(self, "n", n)

    @classmethod
    def from_cli(cls, name, n=DEFAULT_HS_N):
        try:
            tag = CLI_NAMES[name]
        except KeyError:
            raise UnsupportedKind(f"unknown measure name {name!r}") from None
        return cls(tag, n)

    @property
    def cli_name(self):
        return _TAG_TO_CLI[self.tag]


CLI_NAMES = {
    "lambda": "odds_ratio",
    "Q": "yule_q",
    "Y": "yule_y",
    "D": "d_raw",
    "Dprime": "d_prime",
    "r": "corr_r",
    "MI": "mut_inf",
    "sMI": "s_mut_inf",
    "kappa": "kappa",
    "H": "entropy",
    "Hdiag": "entropy_diag",
    "HS": "hs",
}
_TAG_TO_CLI = {tag: name for name, tag in CLI_NAMES.items()}


# --- direct forms ----------------------------------------------------------


def odds_ratio(t):
    return (t.p00 * t.p11) / (t.p01 * t.p10)


def yule_q(t):
    lam = odds_ratio(t)
    return (lam - 1.0) / (lam + 1.0)


def yule_y(t):
    root = math.sqrt(odds_ratio(t))
    return (root - 1.0) / (root + 1.0)


def d_raw(t):
    return t.det


def d_prime(t):
    d = t.det
    if d >= 0.0:
        d_max = min(t.row0 * t.col1, t.col0 * t.row1)
    else:
        d_max = min(t.row0 * t.col0, t.row1 * t.col1)
    return d / d_max


def corr_r(t):
    return t.det / math.sqrt(t.row0 * t.col0 * t.row1 * t.col1)


def mut_inf(t):
    joint = sum(p * math.log2(p) for p in t.cells)
    rows = t.row0 * math.log2(t.row0) + t.row1 * math.log2(t.row1)
    cols = t.col0 * math.log2(t.col0) + t.col1 * math.log2(t.col1)
    return joint - rows - cols


def s_mut_inf(t):
    return math.copysign(mut_inf(t), t.det) if t.det != 0.0 else 0.0


def kappa(t):
    chance = t.row0 * t.col0 + t.row1 * t.col1
    denom = 1.0 - chance
    if denom == 0.0:
        raise UndefinedKappa("chance agreement equals 1")
    return (t.p00 + t.p11 - chance) / denom


def entropy(t):
    return -sum(p * math.log2(p) for p in t.cells)


def entropy_diag(t):
    """Entropy of the diagonal-symmetric table with the same odds-ratio."""
    return _entropy_diag_x(0.5 * math.log(odds_ratio(t)))


def hs(t, n=DEFAULT_HS_N):
    """Entropy-weighted Yule's Y: sign(Y) * |Y|^exp(n * (Hdiag - H))."""
    if not (math.isfinite(n) and n >= 0.0):
        raise ValueError(f"n must be >= 0, got {n!r}")
    y = yule_y(t)
    if y == 0.0:
        return 0.0
    weight = math.exp(n * (entropy_diag(t) - entropy(t)))
    return math.copysign(abs(y) ** weight, y)


_DIRECT = {
    "odds_ratio": odds_ratio,
    "yule_q": yule_q,
    "yule_y": yule_y,
    "d_raw": d_raw,
    "d_prime": d_prime,
    "corr_r": corr_r,
    "mut_inf": mut_inf,
    "s_mut_inf": s_mut_inf,
    "kappa": kappa,
    "entropy": entropy,
    "entropy_diag": entropy_diag,
}


def evaluate(kind, t):
    """Evaluate a MeasureKind on a table (direct form)."""
    if kind.tag == "hs":
        return hs(t, kind.n)
    return _DIRECT[kind.tag](t)


# --- margin-coordinate forms ----------------------------------------------


def _lae(a, b):
    """log(exp(a) + exp(b)) without overflow."""
    if a < b:
        a, b = b, a
    return a + math.log1p(math.exp(b - a))


def _log_e2x_minus_1(x):
    """log |e^{2x} - 1| for x != 0."""
    if x > 0:
        return 2.0 * x + math.log1p(-math.exp(-2.0 * x))
    return math.log1p(-math.exp(2.0 * x))


def _coord_r(x, y, z):
    if x == 0.0:
        return 0.0
    log_den = 0.5 * (
        _lae(x + y + z, y) + _lae(x + y + z, z) + _lae(x, y) + _lae(x, z)
    )
    value = math.exp(_log_e2x_minus_1(x) + y + z - log_den)
    return math.copysign(value, x)


def _coord_d_prime(x, y, z):
    if x == 0.0:
        return 0.0
    if x > 0:
        if y < z:
            log_dmax = _lae(x + y + z, y) + _lae(x, y)
        else:
            log_dmax = _lae(x + y + z, z) + _lae(x, z)
    else:
        if y < -z:
            log_dmax = _lae(x + y + z, y) + _lae(x + y + z, z)
        else:
            log_dmax = _lae(x, y) + _lae(x, z)
    value = math.exp(_log_e2x_minus_1(x) + y + z - log_dmax)
    return math.copysign(value, x)


def _coord_entropy(x, y, z):
    exps = (x + y + z, y, z, x)
    m = max(exps)
    total = sum(math.exp(e - m) for e in exps)
    weighted = sum(e * math.exp(e - m) for e in exps)
    return (m + math.log(total)) / _LN2 - weighted / (_LN2 * total)


def _entropy_diag_x(x):
    return 1.0 + _lae(0.0, x) / _LN2 - x / (_LN2 * (math.exp(-x) + 1.0))


def _coord_hs(x, y, z, n):
    yv = math.tanh(0.5 * x)
    if yv == 0.0:
        return 0.0
    weight = math.exp(n * (_entropy_diag_x(x) - _coord_entropy(x, y, z)))
    return math.copysign(abs(yv) ** weight, yv)


def eval_in_coords(kind, c):
    """Evaluate a measure at margin coordinates using its closed form.

    Supported: yule_y, corr_r, d_prime, entropy, entropy_diag, hs.  Other
    measures have no closed coordinate form; evaluate them on psi(c).
    """
    x, y, z = c.x, c.y, c.z
    tag = kind.tag
    if tag == "yule_y":
        return math.tanh(0.5 * x)
    if tag == "corr_r":
        return _coord_r(x, y, z)
    if tag == "d_prime":
        return _coord_d_prime(x, y, z)
    if tag == "entropy":
        return _coord_entropy(x, y, z)
    if tag == "entropy_diag":
        return _entropy_diag_x(x)
    if tag == "hs":
        return _coord_hs(x, y, z, kind.n)
    raise UnsupportedKind(f"{tag} has no margin-coordinate form")


def _binary_entropy(p):
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def margin_limit(kind, x, axis, direction, other):
    """Closed-form limit of a margin weighting function along one axis.

    ``axis`` is "y" or "z", ``direction`` is +1/-1 (or "+"/"-") and
    ``other`` is the held-fixed remaining coordinate.  Supported kinds:
    corr_r and s_mut_inf (both 0), yule_y (constant), d_prime, hs.
    """
    if axis not in ("y", "z"):
        raise ValueError(f"axis must be 'y' or 'z', got {axis!r}")
    if direction in ("+", 1, +1.0):
        s = 1.0
    elif direction in ("-", -1, -1.0):
        s = -1.0
    else:
        raise ValueError(f"direction must be '+'/'-' or +-1, got {direction!r}")

    tag = kind.tag
    if tag in ("corr_r", "s_mut_inf"):
        return 0.0
    if tag == "yule_y":
        return math.tanh(0.5 * x)
    if tag == "d_prime":
        if x == 0.0:
            return 0.0
        # Same two-case formula for y->+-inf (other = z) and z->+-inf (other = y).
        if x > 0:
            log_den = _lae(2.0 * x, x + s * other)
        else:
            log_den = _lae(x - s * other, 0.0)
        return math.copysign(math.exp(_log_e2x_minus_1(x) - log_den), x)
    if tag == "hs":
        yv = math.tanh(0.5 * x)
        if yv == 0.0:
            return 0.0
        # Limit table keeps a single binary split with success probability p.
        p = 1.0 / (1.0 + math.exp(x + s * other))
        weight = math.exp(kind.n * (_entropy_diag_x(x) - _binary_entropy(p)))
        return math.copysign(abs(yv) ** weight, yv)
    raise UnsupportedKind(f"{tag} has no closed-form axis limit")
