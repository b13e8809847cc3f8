"""Breaking predicates for canonical Gaussian channels, with oracles.

For a canonical form with gain kappa and noise eigenvalues (a, b) the
closed-form conditions are:

===========  ==========================  ====================  ====================
kind         nonclassicality-breaking    entanglement-break.   complete positivity
===========  ==========================  ====================  ====================
I            (a-1)(b-1) >= kappa^4,      ab >= (1+kappa^2)^2   ab >= (1-kappa^2)^2
             with a > 1 and b > 1
II           same as kind I              ab >= (1+kappa^2)^2   ab >= (1+kappa^2)^2
III (both)   lambda_min(Y0) >= 1         ab >= 1               ab >= 1
===========  ==========================  ====================  ====================

NCB implies EB implies CP, and for kinds II and III the EB and CP
conditions coincide.  Every predicate uses non-strict comparison with a
tol_class slack, expressed through signed margins (>= 0 means the
condition holds exactly).

Each closed form is backed by an independent numerical oracle:

* ``ncb_oracle_gaussian`` searches for a pure squeezed covariance V with
  X^T V X dominated by Y - 1; such a witness lets the output P function
  of any input be written as a smoothed, manifestly nonnegative density.
* ``ncb_necessity_fock1`` evaluates the closed-form single-photon output
  P function at the origin, whose sign flips exactly at the breaking
  boundary for unit-gain kind-I channels.
* ``eb_oracle_tmsv`` sends one arm of two-mode squeezed vacua through the
  channel and applies the partial-transpose separability test.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .channels import CanonicalForm, Kind, canonical_reduce, cp_defect, is_cp, kind_from_label
from .gaussian_core import TOL_CLASS, apply_channel_one_side, is_ppt_separable, tmsv_variance
from .phase_space import fock1_output_p

DEFAULT_R_LIST = (0.5, 1.0, 2.0, 4.0, 8.0)
REGION_LABELS = ("unphysical", "cp_only", "eb_not_ncb", "ncb")

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


# -- closed-form margins --------------------------------------------------- #


def cp_margin(kind, kappa, a, b):
    """Signed slack of the complete-positivity condition, ab minus its bound."""
    kind = kind_from_label(kind)
    if kind is Kind.I:
        return a * b - (1.0 - kappa ** 2) ** 2
    if kind is Kind.II:
        return a * b - (1.0 + kappa ** 2) ** 2
    return a * b - 1.0


def eb_margin(kind, kappa, a, b):
    """Signed slack of the entanglement-breaking condition."""
    kind = kind_from_label(kind)
    if kind in (Kind.I, Kind.II):
        return a * b - (1.0 + kappa ** 2) ** 2
    return a * b - 1.0


def ncb_margin(kind, kappa, a, b):
    """Signed slack of the nonclassicality-breaking condition.

    For kinds I and II all three constraints (a above 1, b above 1, and
    the product inequality) must hold, so the margin is their minimum;
    for kind III it is the distance of the smaller noise eigenvalue
    from 1.
    """
    kind = kind_from_label(kind)
    if kind in (Kind.I, Kind.II):
        return min(a - 1.0, b - 1.0, (a - 1.0) * (b - 1.0) - kappa ** 4)
    return min(a - 1.0, b - 1.0)


def is_ncb(form, tol=TOL_CLASS):
    """Nonclassicality-breaking verdict from the canonical closed form."""
    return ncb_margin(form.kind, form.kappa, form.a, form.b) >= -tol


def is_eb(form, tol=TOL_CLASS):
    """Entanglement-breaking verdict from the canonical closed form."""
    return eb_margin(form.kind, form.kappa, form.a, form.b) >= -tol


def is_cp_form(form, tol=TOL_CLASS):
    """Complete-positivity verdict from the canonical closed form."""
    return cp_margin(form.kind, form.kappa, form.a, form.b) >= -tol


# -- reports --------------------------------------------------------------- #


@dataclass(frozen=True, eq=False)
class BreakingReport:
    """All three verdicts for one channel, with margins and shifted noise.

    shifted_noise is (a + kappa^2 - 1, b + kappa^2 - 1), the effective
    added noise relative to the classicality threshold at unit gain.
    The verdicts always satisfy ncb <= eb <= cp as booleans.
    """

    form: CanonicalForm
    cp: bool
    eb: bool
    ncb: bool
    shifted_noise: tuple
    margins: dict


def report(ch, tol=TOL_CLASS):
    """Reduce a channel and evaluate every closed-form predicate."""
    form = canonical_reduce(ch)
    margins = {
        "cp": cp_margin(form.kind, form.kappa, form.a, form.b),
        "eb": eb_margin(form.kind, form.kappa, form.a, form.b),
        "ncb": ncb_margin(form.kind, form.kappa, form.a, form.b),
    }
    shift = form.kappa ** 2 - 1.0
    return BreakingReport(
        form=form,
        cp=margins["cp"] >= -tol,
        eb=margins["eb"] >= -tol,
        ncb=margins["ncb"] >= -tol,
        shifted_noise=(form.a + shift, form.b + shift),
        margins=margins,
    )


# -- independent oracles --------------------------------------------------- #


def ncb_oracle_gaussian(ch, r_max=6.0, n_angles=32, n_r=3001, tol=TOL_CLASS):
    """Numerical nonclassicality-breaking check, independent of the table.

    Sweeps pure squeezed covariances V(r, theta) over r in [0, r_max],
    theta in [0, pi) and reports whether some V is dominated by the
    channel noise: X^T V X <= Y - 1 (up to tol on the smallest
    eigenvalue).  Such a V certifies that every output P function is a
    Gaussian smoothing of a nonnegative phase-space density, hence
    pointwise nonnegative for every input state.  On channels with
    invertible X the existence of a dominating V is also necessary, so
    the sweep reproduces the closed-form verdict; for singular X the
    finite r_max makes the check conservative by at most
    ||X||^2 exp(-2 r_max).
    """
    if not is_cp(ch):
        raise ValueError("oracle needs a completely positive channel")
    u_grid = np.exp(2.0 * np.linspace(0.0, r_max, n_r))
    theta = np.linspace(0.0, np.pi, n_angles, endpoint=False)
    best = _kernels.dominance_best(
        np.ascontiguousarray(ch.X), np.ascontiguousarray(ch.Y),
        np.ascontiguousarray(u_grid), np.ascontiguousarray(np.cos(theta)),
        np.ascontiguousarray(np.sin(theta)))
    return bool(best >= -tol)


def ncb_necessity_fock1(form, tol=TOL_CLASS):
    """Origin-sign test of the single-photon output P function.

    Only meaningful for unit-gain kind-I forms, where the closed-form
    output P exists; its value at the origin is nonnegative iff
    1/a + 1/b <= 1, which coincides with the full breaking condition.
    """
    if form.kind is not Kind.I or abs(form.kappa - 1.0) > 1e-9:
        raise ValueError("single-photon necessity test needs kind I with unit gain")
    return fock1_output_p(form.a, form.b, 0.0, 0.0) >= -tol


def eb_oracle_tmsv(ch, r_list=DEFAULT_R_LIST):
    """Entanglement-breaking check via two-mode squeezed probes.

    Applies the channel to one arm of a two-mode squeezed vacuum for each
    squeeze value in r_list and tests the output for separability with
    the partial-transpose criterion (exact for 1+1-mode Gaussian states).
    True means every tested probe came out separable; r values of a few
    units already place the flip at the closed-form boundary.
    """
    if not is_cp(ch):
        raise ValueError("oracle needs a completely positive channel")
    for r in r_list:
        out = apply_channel_one_side(ch.X, ch.Y, tmsv_variance(r))
        if not is_ppt_separable(out):
            return False
    return True


# -- squeeze orbits --------------------------------------------------------- #


@dataclass(frozen=True, eq=False)
class OrbitPoint:
    """One point of the post-squeeze orbit: noise (a_r, b_r) and its verdict.

    The product a_r * b_r is invariant along the orbit, so EB and CP
    verdicts never change with r; only the NCB verdict can.
    """

    r: float
    a_r: float
    b_r: float
    ncb: bool


def squeeze_orbit(form, r, tol=TOL_CLASS):
    """Noise eigenvalues after composing with a post-squeeze of parameter r.

    The post-unitary diag(e^-r, e^r) maps (a, b) to (a e^-2r, b e^2r)
    and leaves kappa unchanged.
    """
    a_r = form.a * math.exp(-2.0 * r)
    b_r = form.b * math.exp(2.0 * r)
    verdict = ncb_margin(form.kind, form.kappa, a_r, b_r) >= -tol
    return OrbitPoint(r=float(r), a_r=a_r, b_r=b_r, ncb=verdict)


def _golden_max(f, lo, hi, r_tol):
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > r_tol:
        if fc < fd:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = f(d)
        else:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = f(c)
    return 0.5 * (lo + hi)


def find_r0(form, r_tol=1e-10, tol=TOL_CLASS):
    """Squeeze parameter whose orbit point is nonclassicality-breaking.

    Maximizes f(r) = (a e^-2r - 1)(b e^2r - 1) by golden-section search
    on the interval where both factors are positive (it is unimodal
    there, with analytic maximum (sqrt(ab) - 1)^2 at r = ln(a/b)/4).
    Returns the maximizer if its orbit point passes the breaking test,
    else None; for a genuinely entanglement-breaking form the product
    bound ab >= (1 + kappa^2)^2 guarantees success.
    """
    if not is_eb(form, tol=tol):
        raise ValueError("orbit search needs an entanglement-breaking form")
    a, b = form.a, form.b
    r_star = 0.25 * math.log(a / b)
    if a * b > 1.0:
        lo = -0.5 * math.log(b)
        hi = 0.5 * math.log(a)
        if hi - lo > 4.0 * r_tol:
            def f(r):
                return (a * math.exp(-2.0 * r) - 1.0) * (b * math.exp(2.0 * r) - 1.0)

            r_star = _golden_max(f, lo, hi, r_tol)
    point = squeeze_orbit(form, r_star, tol=tol)
    return float(r_star) if point.ncb else None


# -- region classification -------------------------------------------------- #


@dataclass(frozen=True, eq=False)
class RegionRecord:
    """Verdict chain and margins at one (kappa, a, b) grid point."""

    kind: Kind
    kappa: float
    a: float
    b: float
    region_class: str
    cp_margin: float
    eb_margin: float
    ncb_margin: float

    def csv_row(self):
        return [self.kind.value, f"{self.kappa:.12g}", f"{self.a:.12g}",
                f"{self.b:.12g}", self.region_class, f"{self.cp_margin:.12g}",
                f"{self.eb_margin:.12g}", f"{self.ncb_margin:.12g}"]


REGION_CSV_HEADER = ["kind", "kappa", "a", "b", "class",
                     "cp_margin", "eb_margin", "ncb_margin"]


def classify_region(kind, kappa, a, b, tol=TOL_CLASS):
    """Classify one noise-plane point as one of the four nested regions."""
    kind = kind_from_label(kind)
    cp_m = cp_margin(kind, kappa, a, b)
    eb_m = eb_margin(kind, kappa, a, b)
    ncb_m = ncb_margin(kind, kappa, a, b)
    if cp_m < -tol:
        label = "unphysical"
    elif eb_m < -tol:
        label = "cp_only"
    elif ncb_m < -tol:
        label = "eb_not_ncb"
    else:
        label = "ncb"
    return RegionRecord(kind=kind, kappa=float(kappa), a=float(a), b=float(b),
                        region_class=label, cp_margin=cp_m, eb_margin=eb_m,
                        ncb_margin=ncb_m)


def region_sweep(kind, kappa, a_min, a_max, b_min, b_max, n, tol=TOL_CLASS):
    """Classify an n-by-n noise grid; rows ordered a-major then b."""
    if n < 2:
        raise ValueError("sweep needs at least a 2x2 grid")
    a_vals = np.linspace(a_min, a_max, n)
    b_vals = np.linspace(b_min, b_max, n)
    return [classify_region(kind, kappa, a, b, tol=tol)
            for a in a_vals for b in b_vals]


# -- boundary curves --------------------------------------------------------- #


class BoundaryCurve:
    """One region boundary b(a) at fixed kind and kappa.

    name selects the condition: "cp" and "eb" are the hyperbolas
    ab = bound; "ncb" is b = 1 + kappa^4/(a - 1) for kinds I and II
    (defined for a > 1, +inf otherwise) and the corner line b = 1,
    a >= 1 for kind III.
    """

    def __init__(self, name, kind, kappa):
        if name not in ("cp", "eb", "ncb"):
            raise ValueError("curve name must be 'cp', 'eb' or 'ncb'")
        self.name = name
        self.kind = kind_from_label(kind)
        self.kappa = float(kappa)
        if name == "cp":
            self._bound = cp_margin(self.kind, self.kappa, 0.0, 0.0) * -1.0
        elif name == "eb":
            self._bound = eb_margin(self.kind, self.kappa, 0.0, 0.0) * -1.0
        else:
            self._bound = None

    def b_of_a(self, a):
        a = np.asarray(a, dtype=float)
        if self._bound is not None:
            out = np.where(a > 0, self._bound / np.where(a > 0, a, 1.0), np.inf)
        elif self.kind in (Kind.I, Kind.II):
            safe = np.where(a > 1.0, a - 1.0, 1.0)
            out = np.where(a > 1.0, 1.0 + self.kappa ** 4 / safe, np.inf)
        else:
            out = np.where(a >= 1.0, 1.0, np.inf)
        return out if out.ndim else float(out)

    def slope(self, a):
        a = np.asarray(a, dtype=float)
        if self._bound is not None:
            out = np.where(a > 0, -self._bound / np.where(a > 0, a, 1.0) ** 2, np.nan)
        elif self.kind in (Kind.I, Kind.II):
            safe = np.where(a > 1.0, a - 1.0, 1.0)
            out = np.where(a > 1.0, -self.kappa ** 4 / safe ** 2, np.nan)
        else:
            out = np.where(a >= 1.0, 0.0, np.nan)
        return out if out.ndim else float(out)

    def sample(self, a_min, a_max, n=512):
        a = np.linspace(a_min, a_max, n)
        return a, self.b_of_a(a)


def boundary_curves(kind, kappa):
    """The three boundary curves of a canonical family, keyed by name."""
    return {name: BoundaryCurve(name, kind, kappa) for name in ("cp", "eb", "ncb")}


def ncb_eb_tangency(kappa, rel_tol=1e-13):
    """Touching point of the NCB and EB boundary curves for kinds I and II.

    The gap b_ncb(a) - b_eb(a) has a double root, so the contact point is
    located by bisecting the sign change of its derivative; the curves
    touch at a = b = 1 + kappa^2, which this computes to rel_tol without
    using that closed form.
    """
    kappa = float(kappa)
    if not kappa > 0:
        raise ValueError("tangency needs a positive kappa")
    k4 = kappa ** 4
    eb_bound = (1.0 + kappa ** 2) ** 2

    def gap_slope(a):
        return eb_bound / a ** 2 - k4 / (a - 1.0) ** 2

    lo = 1.0 + 1e-9 * (1.0 + kappa ** 2)
    hi = 10.0 * (1.0 + kappa ** 2)
    if not (gap_slope(lo) < 0.0 < gap_slope(hi)):
        raise RuntimeError("tangency bracket failed")
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if gap_slope(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    a_star = 0.5 * (lo + hi)
    return a_star, 1.0 + k4 / (a_star - 1.0)
