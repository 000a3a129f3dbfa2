"""Likelihood-ratio spheres, level spectra, covering/packing radii.

Spheres are taken with respect to the metric W(y|x)/Q(y).  All searches run
over the finite level set of that ratio, where the spheres change.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .channel import (
    OutputDistribution, _measure, is_symmetric, level_masses, level_table, q_in_Qc, word_rows,
)
from .numeric import INF, HypothesisViolation, fsum_values, is_exact, to_weights, value

PERFECT = "perfect"
QUASI_PERFECT = "quasi-perfect"
NEITHER = "neither"


@dataclass(frozen=True)
class RatioSpectrum:
    """Level set of W(.|x)/Q with per-level Q-mass and channel mass."""
    levels: tuple
    q_mass: tuple
    w_mass: tuple
    in_qc: bool

    def Q(self, tau):
        """Q-mass of the closed sphere of radius tau."""
        return fsum_values([m for lv, m in zip(self.levels, self.q_mass) if lv >= tau] or [0])

    def Q_interior(self, tau):
        return fsum_values([m for lv, m in zip(self.levels, self.q_mass) if lv > tau] or [0])

    def Q_shell(self, tau):
        return fsum_values([m for lv, m in zip(self.levels, self.q_mass) if lv == tau] or [0])

    def w_below(self, tau):
        """Channel mass outside the interior: sum of tau' * Q_o(tau') over tau' <= tau."""
        return fsum_values([m for lv, m in zip(self.levels, self.w_mass) if lv <= tau] or [0])

    @property
    def finite_levels(self):
        return [lv for lv in self.levels if lv != INF]


@dataclass(frozen=True)
class RadiusPair:
    eta: object
    nu: object


@dataclass(frozen=True)
class QPClassification:
    verdict: str
    witness_gamma: object
    witness_Q: object
    radii: RadiusPair

    @property
    def quasi_perfect(self) -> bool:
        return self.verdict in (PERFECT, QUASI_PERFECT)


def _row_and_table(ch, Q, x):
    qw, qs = _measure(Q)
    row = ch.rows([ch.input_index(x)])
    return row, ch.scale, qw, qs, level_table(row, ch.scale, qw, qs)


def sphere(x, tau, ch, Q, kind: str = "closed") -> set:
    """Outputs whose ratio W(y|x)/Q(y) is >= tau (closed), > tau (interior) or == tau (shell)."""
    *_, table = _row_and_table(ch, Q, x)
    lv = table.levels
    idx = table.index[0]
    if kind == "closed":
        keep = {k for k, v in enumerate(lv) if v >= tau}
    elif kind == "interior":
        keep = {k for k, v in enumerate(lv) if v > tau}
    elif kind == "shell":
        keep = {k for k, v in enumerate(lv) if v == tau}
    else:
        raise ValueError(f"unknown sphere kind {kind!r}")
    return {ch.outputs[j] for j in np.flatnonzero(np.isin(idx, list(keep)))}


def spectrum(ch, Q, x, check: bool = True) -> RatioSpectrum:
    """Ratio spectrum seen from input x.

    With ``check`` the Qc membership is verified; when it fails the spectrum
    is still returned but ``in_qc`` is False and it is only valid for this x.
    """
    row, scale, qw, qs, table = _row_and_table(ch, Q, x)
    exact = scale is not None and qs is not None
    if not exact:
        row = row.astype(np.float64) / (1 if scale is None else scale)
        qw = np.asarray(qw, dtype=np.float64) / (1 if qs is None else qs)
    wm = level_masses(row, table)[0]
    qm = level_masses(qw.reshape(1, -1), table)[0]
    in_qc = q_in_Qc(ch, Q) if check else True
    if exact:
        wm = tuple(Fraction(int(v), scale) for v in wm)
        qm = tuple(Fraction(int(v), qs) for v in qm)
    else:
        wm = tuple(float(v) for v in wm)
        qm = tuple(float(v) for v in qm)
    return RatioSpectrum(table.levels, qm, wm, in_qc)


def _radii_from_rows(rows, scale, qw, qs):
    table = level_table(rows, scale, qw, qs)
    relevant = (np.asarray(qw) > 0) | (np.asarray(rows) > 0).any(axis=0)
    idx = table.index[:, relevant]
    best = idx.min(axis=0)
    worst_best = int(best.max())
    eta = table.levels[worst_best]
    if idx.shape[0] == 1:
        return RadiusPair(eta, Fraction(0) if scale is not None else 0.0), True, True
    second = np.sort(idx, axis=0)[1]
    nu_idx = int(second.min())
    nu = table.levels[nu_idx]
    return RadiusPair(eta, nu), nu_idx >= worst_best, nu_idx > worst_best


def _preconditions(ch, Q, check_qc):
    if check_qc:
        if not is_symmetric(ch):
            raise HypothesisViolation("channel is not symmetric")
        if not q_in_Qc(ch, Q):
            raise HypothesisViolation("Q does not preserve the channel symmetry (Q not in Qc)")


def radii(code, ch, Q) -> RadiusPair:
    """Covering radius eta and packing radius nu of ``code`` w.r.t. Q.

    Outputs that carry no Q-mass and have zero likelihood under every
    codeword are ignored: they play no part in decoding or in the bound.
    """
    rows, scale = word_rows(ch, _words(code))
    qw, qs = _measure(Q)
    return _radii_from_rows(rows, scale, qw, qs)[0]


def classify_qp(code, ch, Q, check_qc: bool = True) -> QPClassification:
    """Generalized perfect / quasi-perfect classification for a fixed Q.

    Quasi-perfect when some gamma has covering closed spheres and disjoint
    interiors (equivalently nu <= eta); perfect when the closed spheres at
    the largest covering gamma are already disjoint.  The witness is eta.
    """
    _preconditions(ch, Q, check_qc)
    rows, scale = word_rows(ch, _words(code))
    qw, qs = _measure(Q)
    rp, qp, perfect = _radii_from_rows(rows, scale, qw, qs)
    if perfect:
        return QPClassification(PERFECT, rp.eta, Q, rp)
    if qp:
        return QPClassification(QUASI_PERFECT, rp.eta, Q, rp)
    return QPClassification(NEITHER, None, None, rp)


def scaled_rows(rows, scale, pv, ps):
    """rows[i] * pv[i] / ps with the combined denominator (None in float mode)."""
    if scale is not None and ps is not None:
        return rows.astype(object) * np.asarray(pv).astype(object)[:, None], scale * ps
    f = rows.astype(np.float64) / (1 if scale is None else scale)
    return f * (np.asarray(pv, dtype=np.float64) / (1 if ps is None else ps))[:, None], None


def source_scaled_rows(rows, scale, source):
    """Rows multiplied by their message probabilities, as one exact/float table."""
    pv, ps = to_weights(list(source), "rational" if all(is_exact(p) for p in source) else "float")
    return scaled_rows(rows, scale, pv, ps)


def classify_jscc(encoder, source, ch, Q, check_qc: bool = True) -> QPClassification:
    """Source-matched classification: spheres of radius gamma / P_V(v) around x_v.

    Messages with zero probability are dropped (their spheres are empty).
    """
    _preconditions(ch, Q, check_qc)
    encoder = _words(encoder)
    source = list(source)
    if len(encoder) != len(source):
        raise ValueError("one codeword per source message is required")
    keep = [i for i, p in enumerate(source) if p > 0]
    rows, scale = word_rows(ch, [encoder[i] for i in keep])
    rows, scale = source_scaled_rows(rows, scale, [source[i] for i in keep])
    qw, qs = _measure(Q)
    rp, qp, perfect = _radii_from_rows(rows, scale, qw, qs)
    if perfect:
        return QPClassification(PERFECT, rp.eta, Q, rp)
    if qp:
        return QPClassification(QUASI_PERFECT, rp.eta, Q, rp)
    return QPClassification(NEITHER, None, None, rp)


def _words(code):
    words = getattr(code, "words", code)
    return [tuple(w) if isinstance(w, (tuple, list)) else (w,) for w in words]


def scaled_measure(Q, factor):
    """Unnormalized measure factor * Q (only the product gamma * Q matters)."""
    qw, qs = _measure(Q)
    if qs is not None and is_exact(factor):
        factor = Fraction(factor)
        return [Fraction(int(w), qs) * factor for w in qw]
    return [value(w, qs) * float(factor) for w in qw]


__all__ = [
    "RatioSpectrum", "RadiusPair", "QPClassification", "PERFECT", "QUASI_PERFECT", "NEITHER",
    "sphere", "spectrum", "radii", "classify_qp", "classify_jscc", "scaled_measure",
    "OutputDistribution",
]
