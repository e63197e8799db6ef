"""Simulated quantum period finding on the orbit of the empty set.

Two simulation routes are provided:

``analytic``
    The measurement statistics of the counting register depend only on the
    period ``l`` of ``k -> s^k(empty)`` and the register width ``t``. They are
    evaluated in closed form and sampled exactly without ever materialising
    the joint state (or, for wide registers, even the full outcome vector).

``statevector``
    The joint state over ``2**t x 2**n`` amplitudes is built from the powering
    oracle, the value register is measured, the QFT is applied to the
    counting register and that register is measured. Only feasible for
    ``t + n <= 26`` and used to cross-check the analytic route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Optional

import numpy as np

from .orientation import Outmap
from .period import PowerOracle, cycle_decomposition, orbit_period

STATEVECTOR_CAP = 26
DENSE_CAP = 24
WIDTH_CAP = 40
DEFAULT_WINDOW = 1 << 16

Mode = Literal["analytic", "statevector"]


class RecoveryExhausted(RuntimeError):
    pass


@dataclass
class QpfConfig:
    t: Optional[int] = None  # counting-register width; None means 2n+1
    samples: int = 20
    seed: int = 0
    mode: Mode = "analytic"
    attempts: int = 3

    def width(self, n: int) -> int:
        t = 2 * n + 1 if self.t is None else self.t
        if t < n:
            raise ValueError(f"counting register too narrow: t={t} < n={n}")
        if t < 1 or t > WIDTH_CAP:
            raise ValueError(f"t={t} outside 1..{WIDTH_CAP}")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.mode not in ("analytic", "statevector"):
            raise ValueError(f"unknown mode {self.mode!r}")
        return t


@dataclass
class QpfResult:
    t: int
    measured: list[int] = field(default_factory=list)
    candidates: list[int] = field(default_factory=list)
    recovered_period: Optional[int] = None
    oracle_calls: int = 0
    validation_calls: int = 0

    @property
    def queries_used(self) -> int:
        return self.oracle_calls + self.validation_calls


@dataclass
class SinkSearch:
    sink: int
    attempts: list[QpfResult]
    oracle_calls: int
    validation_calls: int

    @property
    def period(self) -> int:
        return self.attempts[-1].recovered_period


# -- outcome distribution ---------------------------------------------------


def _mulmod(m: int, y: np.ndarray, size: int) -> np.ndarray:
    """``m * y % size`` without int64 overflow for ``m, y, size <= 2**40``."""
    if size <= 1 << 31:
        return (m % size * y) % size
    m %= size
    hi, lo = y >> 20, y & ((1 << 20) - 1)
    return (((m * hi) % size << 20) % size + m * lo) % size


def _fejer(m: int, y: np.ndarray, size: int) -> np.ndarray:
    """``|sum_{a<m} exp(2 pi i a y / size)|^2 / (m * size)`` for integer ``y``.

    Phases are reduced modulo ``size`` in integer arithmetic before any
    floating point work.
    """
    y = np.asarray(y, dtype=np.int64) % size
    out = np.empty(y.shape, dtype=np.float64)
    zero = y == 0
    out[zero] = m / size
    yz = y[~zero]
    # fold residues into [0, size/2]: sin^2 is symmetric and keeps full relative precision there
    top = _mulmod(m, yz, size)
    top = np.minimum(top, size - top)
    bottom = np.minimum(yz, size - yz)
    num = np.sin(np.pi * top / size)
    den = np.sin(np.pi * bottom / size)
    out[~zero] = num * num / (den * den) / (m * size)
    return out


def _branches(l: int, t: int) -> list[tuple[float, int]]:
    """Offset classes ``(probability, terms)`` after measuring the value register.

    Offset ``k0 < l`` leaves ``ceil((2**t - k0) / l)`` terms; ``2**t mod l``
    offsets get one more term than the rest.
    """
    size = 1 << t
    base, extra = divmod(size, l)
    out = []
    if extra:
        out.append((extra * (base + 1) / size, base + 1))
    if l - extra and base:
        out.append(((l - extra) * base / size, base))
    return out


def qpf_distribution(l: int, t: int) -> np.ndarray:
    """Exact probability of each counting-register outcome ``j < 2**t``.

    The offset of the arithmetic progression only contributes a phase, so the
    result is the mixture over offsets of the QFT of a uniform progression
    with stride ``l``.
    """
    if not 1 <= t <= DENSE_CAP:
        raise ValueError(f"dense distribution supports 1 <= t <= {DENSE_CAP}, got {t}")
    size = 1 << t
    if not 1 <= l <= size:
        raise ValueError(f"period {l} outside 1..{size}")
    phase = _mulmod(l, np.arange(size, dtype=np.int64), size)
    probs = np.zeros(size)
    for weight, terms in _branches(l, t):
        probs += weight * _fejer(terms, phase, size)
    return probs


class _PhaseSampler:
    """Samples ``y`` in ``Z_size`` with probability ``_fejer(terms, y, size)``.

    Small rings are sampled by inverse CDF. Large rings use an exact window of
    ``|y| <= window`` around zero and rejection sampling for the tail against
    the envelope ``size / (4 terms d**2)``, which dominates the kernel because
    ``sin(pi x) >= 2x`` on ``[0, 1/2]``.
    """

    def __init__(self, terms: int, size: int, window: int):
        self.terms = terms
        self.size = size
        self.window = window
        if size <= 2 * window + 1:
            self.offsets = np.arange(size, dtype=np.int64)
            self.tail = 0.0
        else:
            self.offsets = np.arange(-window, window + 1, dtype=np.int64)
        probs = _fejer(terms, self.offsets, size)
        self.cdf = np.cumsum(probs)
        if size > 2 * window + 1:
            self.tail = max(0.0, 1.0 - float(self.cdf[-1]))

    def sample(self, rng: np.random.Generator) -> int:
        u = rng.random()
        if u >= self.tail:
            x = (u - self.tail) / (1.0 - self.tail) * self.cdf[-1]
            idx = min(int(np.searchsorted(self.cdf, x, side="right")), self.cdf.size - 1)
            return int(self.offsets[idx]) % self.size
        return self._sample_tail(rng)

    def _sample_tail(self, rng: np.random.Generator) -> int:
        size, w, terms = self.size, self.window, self.terms
        d_max = size // 2
        neg_max = size - 1 - d_max
        z = 1.0 / w - 1.0 / d_max
        while True:
            x = 1.0 / (1.0 / w - rng.random() * z)
            a = math.ceil(x)
            if a <= w or a > d_max:
                continue
            negative = rng.random() < 0.5
            if negative and a > neg_max:
                continue
            h = 1.0 / (a - 1) - 1.0 / a
            k = float(_fejer(terms, np.array([a]), size)[0])
            if rng.random() * size * h < 4.0 * terms * k:
                return (size - a) if negative else a


class OutcomeSampler:
    """Exact sampler for :func:`qpf_distribution` that works for wide registers.

    With ``g = gcd(l, 2**t)`` the outcome only matters through
    ``y = j * (l/g) mod 2**t/g``; ``y`` is drawn from the offset-class kernel
    and mapped back to a uniformly chosen preimage ``j``.
    """

    def __init__(self, l: int, t: int, window: int = DEFAULT_WINDOW):
        size = 1 << t
        if not 1 <= l <= size:
            raise ValueError(f"period {l} outside 1..{size}")
        self.l, self.t = l, t
        self.g = math.gcd(l, size)
        self.ring = size // self.g
        self.inverse = pow(l // self.g, -1, self.ring) if self.ring > 1 else 0
        branches = _branches(l, t)
        self.weights = np.cumsum([w for w, _ in branches])
        self.samplers = [_PhaseSampler(terms, self.ring, window) for _, terms in branches]

    def sample(self, rng: np.random.Generator) -> int:
        b = min(int(np.searchsorted(self.weights, rng.random() * self.weights[-1], side="right")),
                len(self.samplers) - 1)
        y = self.samplers[b].sample(rng)
        q = int(rng.integers(self.g)) if self.g > 1 else 0
        return (y * self.inverse) % self.ring + self.ring * q


@lru_cache(maxsize=64)
def outcome_sampler(l: int, t: int, window: int = DEFAULT_WINDOW) -> OutcomeSampler:
    return OutcomeSampler(l, t, window)


def _draw(cdf: np.ndarray, rng: np.random.Generator) -> int:
    idx = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    return min(idx, cdf.size - 1)


# -- statevector route ------------------------------------------------------


def _check_statevector(n: int, t: int) -> None:
    if t + n > STATEVECTOR_CAP:
        raise MemoryError(f"statevector mode needs t + n <= {STATEVECTOR_CAP}, got {t + n}")


def joint_state(oracle: PowerOracle, t: int) -> np.ndarray:
    """``2**(-t/2) sum_k |k>|s^k(empty)>`` as a ``(2**t, 2**n)`` array."""
    n = oracle.m.n
    _check_statevector(n, t)
    size = 1 << t
    values = oracle.orbit_values(size, 0)
    state = np.zeros((size, 1 << n), dtype=np.complex128)
    state[np.arange(size), values] = 1.0 / math.sqrt(size)
    return state


def qft_rows(state: np.ndarray) -> np.ndarray:
    """QFT ``|k> -> 2**(-t/2) sum_j exp(2 pi i j k / 2**t) |j>`` on axis 0."""
    size = state.shape[0]
    return np.fft.ifft(state, axis=0) * math.sqrt(size)


def statevector_distribution(m: Outmap, t: int) -> np.ndarray:
    state = qft_rows(joint_state(PowerOracle(m), t))
    return np.sum(np.abs(state) ** 2, axis=1)


class StatevectorSampler:
    """Per shot: measure the value register, QFT the collapsed counting register, measure it."""

    def __init__(self, m: Outmap, t: int):
        self.state = joint_state(PowerOracle(m), t)
        col = np.sum(np.abs(self.state) ** 2, axis=0)
        self.value_cdf = np.cumsum(col)
        self.column_norms = col
        self._cdfs: dict[int, np.ndarray] = {}

    def sample(self, rng: np.random.Generator) -> int:
        v = _draw(self.value_cdf, rng)
        cdf = self._cdfs.get(v)
        if cdf is None:
            collapsed = self.state[:, v] / math.sqrt(self.column_norms[v])
            amp = qft_rows(collapsed)
            cdf = np.cumsum(np.abs(amp) ** 2)
            self._cdfs[v] = cdf
        return _draw(cdf, rng)


# -- classical post-processing ---------------------------------------------


def convergents(num: int, den: int):
    """Convergents ``p/q`` of the continued fraction of ``num/den``."""
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    while den:
        a, rem = divmod(num, den)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield Fraction(p, q)
        num, den = den, rem


def continued_fraction_candidates(j: int, t: int, bound: int) -> list[int]:
    """Denominators ``<= bound`` of the convergents of ``j / 2**t``, ascending."""
    if not 0 <= j < 1 << t:
        raise ValueError(f"outcome {j} outside [0, 2**{t})")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    return sorted({c.denominator for c in convergents(j, 1 << t) if c.denominator <= bound})


def _prime_factors(x: int) -> list[int]:
    out = []
    p = 2
    while p * p <= x:
        if x % p == 0:
            out.append(p)
            while x % p == 0:
                x //= p
        p += 1
    if x > 1:
        out.append(x)
    return out


def _make_sampler(m: Outmap, cfg: QpfConfig, t: int):
    if cfg.mode == "statevector":
        return StatevectorSampler(m, t)
    # the simulator may read the true period; the algorithm never sees it
    return outcome_sampler(orbit_period(m, 0).period, t)


def recover_period(m: Outmap, cfg: QpfConfig, rng: Optional[np.random.Generator] = None) -> QpfResult:
    """Sample, expand continued fractions, validate candidates with the oracle.

    Every shot costs one oracle invocation and adds its convergent
    denominators ``<= 2**n`` and their lcms with all earlier candidates. New
    candidates are validated by checking ``s^r(empty) == empty``, largest
    first; divisors of a failed candidate cannot be multiples of the period
    and are skipped without a query. The first hit is reduced prime by prime,
    so the result is the exact period rather than a multiple of it.
    """
    t = cfg.width(m.n)
    bound = 1 << m.n
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    sampler = _make_sampler(m, cfg, t)
    cd = cycle_decomposition(m)
    result = QpfResult(t=t)
    pool: set[int] = set()
    failed: list[int] = []

    def returns_home(r: int) -> bool:
        result.validation_calls += 1
        return cd.power(r, 0) == 0

    for _ in range(cfg.samples):
        j = sampler.sample(rng)
        result.oracle_calls += 1
        result.measured.append(j)
        fresh = continued_fraction_candidates(j, t, bound)
        new = set(fresh)
        for a in fresh:
            for b in pool | new:
                c = math.lcm(a, b)
                if c <= bound:
                    new.add(c)
        for r in sorted(new - pool, reverse=True):
            pool.add(r)
            if any(f % r == 0 for f in failed):
                continue
            if not returns_home(r):
                failed.append(r)
                continue
            for p in _prime_factors(r):
                while r % p == 0 and returns_home(r // p):
                    r //= p
            result.recovered_period = r
            result.candidates = sorted(pool)
            return result
    result.candidates = sorted(pool)
    return result


def find_sink(m: Outmap, cfg: QpfConfig) -> SinkSearch:
    """Recover the period, then evaluate ``s^(l-1)(empty)`` once and check it is a sink."""
    attempts = []
    oracle_calls = validation_calls = 0
    cd = cycle_decomposition(m)
    for attempt in range(max(cfg.attempts, 1)):
        if attempt == 0:
            rng = np.random.default_rng(cfg.seed)
        else:
            rng = np.random.default_rng([cfg.seed, attempt])
        res = recover_period(m, cfg, rng)
        attempts.append(res)
        oracle_calls += res.oracle_calls
        validation_calls += res.validation_calls
        if res.recovered_period is None:
            continue
        sink = cd.power(res.recovered_period - 1, 0)
        oracle_calls += 1
        validation_calls += 1
        if m.eval(sink) == 0:
            return SinkSearch(sink, attempts, oracle_calls, validation_calls)
    raise RecoveryExhausted(
        f"no validated sink after {len(attempts)} attempt(s) of {cfg.samples} samples"
    )


def quantum_find_sink(m: Outmap, cfg: QpfConfig) -> int:
    return find_sink(m, cfg).sink
