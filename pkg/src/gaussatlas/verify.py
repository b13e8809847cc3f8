"""End-to-end verification checks tying closed forms to independent numerics.

Each check re-derives one guarantee of the package from scratch (direct
inequality restatements, Fourier pipelines, probe-state separability,
random round-trips) and compares against the implemented predicates.
``run_suite`` groups them into named suites for the CLI; the acceptance
test suite runs all of them.
"""

import time
from dataclasses import dataclass

import numpy as np

from .breaking import (
    boundary_curves,
    cp_margin,
    eb_margin,
    eb_oracle_tmsv,
    find_r0,
    is_cp_form,
    is_eb,
    is_ncb,
    ncb_eb_tangency,
    ncb_margin,
    ncb_necessity_fock1,
    ncb_oracle_gaussian,
    squeeze_orbit,
)
from .channels import Channel, Kind, canonical_channel, canonical_reduce, act_chargrid, act_variance, compose_post_unitary, compose_pre_unitary
from .gaussian_core import TOL_CLASS, rotation
from .phase_space import (
    GridSpec,
    P_EPS,
    char_fock1,
    char_gaussian,
    char_vacuum,
    convert_order,
    fock1_output_p_grid_units,
    quasi_from_char,
)

_KAPPAS_TABLE = (0.6, 1.0, 1.5)
_KAPPAS_CHAIN = (0.4, 0.6, 0.8, 1.0, 1.25, 2.0)
_KAPPAS_ORACLE = (0.4, 0.6, 0.8, 1.0, 1.25, 2.0)
_BOUNDARY_SKIP = 1e-5  # stay this far from decision boundaries in oracle sweeps


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _ab_grid(n):
    # noise grid over (0, 6], avoiding the degenerate origin
    return np.linspace(6.0 / n, 6.0, n)


def _inline_margins(kind, kappa, a, b):
    """The table inequalities restated longhand, as the comparison baseline."""
    if kind is Kind.I:
        cp = a * b - (1.0 - kappa ** 2) ** 2
        eb = a * b - (1.0 + kappa ** 2) ** 2
        ncb = min(a - 1.0, b - 1.0, (a - 1.0) * (b - 1.0) - kappa ** 4)
    elif kind is Kind.II:
        cp = a * b - (1.0 + kappa ** 2) ** 2
        eb = a * b - (1.0 + kappa ** 2) ** 2
        ncb = min(a - 1.0, b - 1.0, (a - 1.0) * (b - 1.0) - kappa ** 4)
    else:
        cp = a * b - 1.0
        eb = a * b - 1.0
        ncb = min(a - 1.0, b - 1.0)
    return cp, eb, ncb


def criterion_1():
    """Closed-form margins match the canonical-family inequalities to 1e-12,
    all the way through channel construction and canonical reduction."""
    vals = _ab_grid(50)
    worst = 0.0
    mismatches = 0
    checked = 0
    for kind in (Kind.I, Kind.II, Kind.III_RANK1):
        for kappa in _KAPPAS_TABLE:
            for a in vals:
                for b in vals:
                    form = canonical_reduce(canonical_channel(kind, a, b, kappa))
                    got = (cp_margin(form.kind, form.kappa, form.a, form.b),
                           eb_margin(form.kind, form.kappa, form.a, form.b),
                           ncb_margin(form.kind, form.kappa, form.a, form.b))
                    want = _inline_margins(kind, kappa if kind is not Kind.III_RANK1 else form.kappa,
                                           max(a, b), min(a, b))
                    diff = max(abs(g - w) for g, w in zip(got, want))
                    worst = max(worst, diff)
                    checked += 1
                    verdicts = (is_cp_form(form), is_eb(form), is_ncb(form))
                    inline_verdicts = tuple(w >= -TOL_CLASS for w in want)
                    if diff > 1e-12 or verdicts != inline_verdicts:
                        mismatches += 1
    ok = mismatches == 0
    return CheckResult(
        "table-margins",
        ok,
        f"{checked} grid points x 3 kinds, worst margin deviation {worst:.3e}, "
        f"{mismatches} mismatches")


def criterion_2():
    """Verdict nesting NCB => EB => CP everywhere; EB and CP coincide for
    kinds II and III."""
    vals = _ab_grid(50)
    chain_breaks = 0
    collapse_breaks = 0
    checked = 0
    for kind in (Kind.I, Kind.II, Kind.III_RANK1):
        for kappa in _KAPPAS_CHAIN:
            for a in vals:
                for b in vals:
                    cp_v = cp_margin(kind, kappa, a, b) >= -TOL_CLASS
                    eb_v = eb_margin(kind, kappa, a, b) >= -TOL_CLASS
                    ncb_v = ncb_margin(kind, kappa, a, b) >= -TOL_CLASS
                    checked += 1
                    if (ncb_v and not eb_v) or (eb_v and not cp_v):
                        chain_breaks += 1
                    if kind in (Kind.II, Kind.III_RANK1) and eb_v != cp_v:
                        collapse_breaks += 1
    ok = chain_breaks == 0 and collapse_breaks == 0
    return CheckResult(
        "verdict-chain",
        ok,
        f"{checked} points: {chain_breaks} chain breaks, "
        f"{collapse_breaks} EB/CP collapse violations")


def criterion_3():
    """The NCB and EB boundary curves touch at a = b = 1 + kappa^2,
    recovered by root-finding on the curves to 1e-9."""
    worst = 0.0
    worst_gap = 0.0
    for kappa in _KAPPAS_TABLE:
        a_star, b_star = ncb_eb_tangency(kappa)
        expected = 1.0 + kappa ** 2
        worst = max(worst, abs(a_star - expected), abs(b_star - expected))
        curves = boundary_curves(Kind.I, kappa)
        gap = abs(curves["ncb"].b_of_a(a_star) - curves["eb"].b_of_a(a_star))
        worst_gap = max(worst_gap, gap)
    ok = worst <= 1e-9 and worst_gap <= 1e-8
    return CheckResult(
        "curve-tangency",
        ok,
        f"worst contact-point deviation {worst:.3e}, worst curve gap {worst_gap:.3e}")


def criterion_4():
    """Single-photon breaking necessity at unit gain: the origin sign test
    agrees with the closed predicate on 1000 random noise pairs, and the
    closed-form output P matches the full Fourier pipeline to 1e-6."""
    rng = np.random.default_rng(411)
    checked = 0
    mismatches = 0
    while checked < 1000:
        a, b = rng.uniform(0.5, 5.0, size=2)
        # stay off both decision boundaries so tolerance conventions agree
        if abs((a - 1.0) * (b - 1.0) - 1.0) < 1e-4 or abs(a - 1.0) < 1e-4 or abs(b - 1.0) < 1e-4:
            continue
        form = canonical_reduce(canonical_channel(Kind.I, a, b, 1.0))
        if ncb_necessity_fock1(form) != is_ncb(form):
            mismatches += 1
        checked += 1

    spec = GridSpec(side=257, extent=10.0)
    worst_fft = 0.0
    printed_err = 0.0
    for a, b in ((2.0, 2.0), (3.0, 1.5), (4.0, 4.0)):
        ch = canonical_channel(Kind.I, a, b, 1.0)
        out = act_chargrid(ch, char_fock1(0.0, spec))
        q = quasi_from_char(convert_order(out, 1.0))
        a1, a2 = np.meshgrid(q.axis, q.axis, indexing="ij")
        closed = fock1_output_p_grid_units(a, b, a1, a2)
        worst_fft = max(worst_fft, float(np.abs(q.values - closed).max()))
        alt = fock1_output_p_grid_units(a, b, a1, a2, variant="printed")
        printed_err = max(printed_err, float(np.abs(q.values - alt).max()))
    ok = mismatches == 0 and worst_fft <= 1e-6
    return CheckResult(
        "fock1-necessity",
        ok,
        f"{checked} sign tests, {mismatches} mismatches; pipeline vs closed form "
        f"max err {worst_fft:.3e} (printed variant deviates by {printed_err:.3e})")


def criterion_5():
    """Squeezed-probe breaking oracle agrees with the closed form on a
    20x20x6 noise grid away from the boundary, within the runtime budget."""
    t0 = time.perf_counter()
    vals = np.linspace(0.3, 6.0, 20)
    mismatches = 0
    checked = 0
    for kappa in _KAPPAS_ORACLE:
        for a in vals:
            for b in vals:
                if cp_margin(Kind.I, kappa, a, b) < _BOUNDARY_SKIP:
                    continue
                if abs(ncb_margin(Kind.I, kappa, a, b)) < _BOUNDARY_SKIP:
                    continue
                ch = canonical_channel(Kind.I, a, b, kappa)
                form = canonical_reduce(ch)
                if ncb_oracle_gaussian(ch) != is_ncb(form):
                    mismatches += 1
                checked += 1
    # thinned second-kind pass: same predicate, flipped-sign X
    for kappa in _KAPPAS_ORACLE:
        for a in vals[::2]:
            for b in vals[::2]:
                if cp_margin(Kind.II, kappa, a, b) < _BOUNDARY_SKIP:
                    continue
                if abs(ncb_margin(Kind.II, kappa, a, b)) < _BOUNDARY_SKIP:
                    continue
                ch = canonical_channel(Kind.II, a, b, kappa)
                form = canonical_reduce(ch)
                if ncb_oracle_gaussian(ch) != is_ncb(form):
                    mismatches += 1
                checked += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 60.0
    return CheckResult(
        "ncb-oracle-grid",
        ok,
        f"{checked} channels, {mismatches} oracle mismatches, {elapsed:.1f} s")


def criterion_6():
    """Probe-state separability oracle agrees with the closed EB margin on
    the noise grid, with no false entanglement-breaking verdicts."""
    vals = np.linspace(0.3, 6.0, 20)
    mismatches = 0
    false_eb = 0
    checked = 0
    for kappa in _KAPPAS_ORACLE:
        for a in vals:
            for b in vals:
                if cp_margin(Kind.I, kappa, a, b) < _BOUNDARY_SKIP:
                    continue
                if abs(eb_margin(Kind.I, kappa, a, b)) < 1e-6:
                    continue
                ch = canonical_channel(Kind.I, a, b, kappa)
                form = canonical_reduce(ch)
                oracle = eb_oracle_tmsv(ch)
                closed = is_eb(form)
                if oracle != closed:
                    mismatches += 1
                    if oracle and not closed:
                        false_eb += 1
                checked += 1
    ok = mismatches == 0
    return CheckResult(
        "eb-oracle-grid",
        ok,
        f"{checked} channels, {mismatches} mismatches, {false_eb} false-EB verdicts")


def _random_symplectic(rng):
    lam = float(np.exp(rng.uniform(-1.0, 1.0)))
    return (rotation(rng.uniform(-np.pi, np.pi))
            @ np.diag([lam, 1.0 / lam])
            @ rotation(rng.uniform(-np.pi, np.pi)))


def criterion_7():
    """Every entanglement-breaking channel admits a squeeze parameter whose
    orbit point breaks nonclassicality; boundary-EB channels land exactly
    on the breaking boundary."""
    rng = np.random.default_rng(707)
    kinds = (Kind.I, Kind.II, Kind.III_RANK1, Kind.III_ZERO)
    failures = 0
    for _ in range(1000):
        kind = kinds[int(rng.integers(len(kinds)))]
        kappa = float(rng.uniform(0.3, 1.5))
        a = float(rng.uniform(0.2, 6.0))
        bound = (1.0 + kappa ** 2) ** 2 if kind in (Kind.I, Kind.II) else 1.0
        b = (bound + float(rng.uniform(0.0, 5.0))) / a
        ch = canonical_channel(kind, a, b, kappa if kind in (Kind.I, Kind.II) else None)
        ch = compose_post_unitary(compose_pre_unitary(ch, _random_symplectic(rng)),
                                  rotation(rng.uniform(-np.pi, np.pi)))
        form = canonical_reduce(ch)
        r0 = find_r0(form)
        if r0 is None or not squeeze_orbit(form, r0).ncb:
            failures += 1

    worst_boundary = 0.0
    for kappa in _KAPPAS_TABLE:
        for a in (0.9, 1.36, 2.5):
            b = (1.0 + kappa ** 2) ** 2 / a
            form = canonical_reduce(canonical_channel(Kind.I, a, b, kappa))
            r0 = find_r0(form)
            if r0 is None:
                failures += 1
                continue
            point = squeeze_orbit(form, r0)
            peak = (point.a_r - 1.0) * (point.b_r - 1.0)
            worst_boundary = max(worst_boundary, abs(peak - kappa ** 4))
    ok = failures == 0 and worst_boundary <= 1e-8
    return CheckResult(
        "orbit-r0",
        ok,
        f"1000 random EB channels, {failures} failures; boundary-EB orbit peak "
        f"off by {worst_boundary:.3e}")


def criterion_8():
    """Canonical-reduction witnesses close to 1e-10 on 10^4 random channels,
    with the kind fixed by the sign of det X every time."""
    rng = np.random.default_rng(808)
    worst = 0.0
    kind_errors = 0
    for _ in range(10000):
        X = rng.standard_normal((2, 2))
        A = rng.standard_normal((2, 2))
        ch = Channel(X=X, Y=A.T @ A)
        form = canonical_reduce(ch)
        scale_x = max(1.0, np.abs(form.S).max() * np.abs(ch.X).max())
        scale_y = max(1.0, np.abs(ch.Y).max())
        res_x = np.abs(form.S @ ch.X @ form.R - form.x_canonical).max() / scale_x
        res_y = np.abs(form.R.T @ ch.Y @ form.R - form.y_canonical).max() / scale_y
        res_s = abs(np.linalg.det(form.S) - 1.0) / max(1.0, np.abs(form.S).max() ** 2)
        res_r = np.abs(form.R.T @ form.R - np.eye(2)).max()
        worst = max(worst, res_x, res_y, res_s, res_r)
        expected = Kind.I if np.linalg.det(X) > 0 else Kind.II
        if form.kind is not expected:
            kind_errors += 1
    ok = worst <= 1e-10 and kind_errors == 0
    return CheckResult(
        "reduction-roundtrip",
        ok,
        f"10000 channels, worst witness residual {worst:.3e}, "
        f"{kind_errors} kind mismatches")


def criterion_9():
    """Grid-level channel action reproduces the covariance-level action on
    Gaussian inputs to 1e-6 for 20 random channel/state pairs."""
    rng = np.random.default_rng(909)
    spec = GridSpec(side=1025, extent=8.0)
    worst = 0.0
    for _ in range(20):
        lam = float(np.exp(rng.uniform(-0.35, 0.35)))
        S = (rotation(rng.uniform(-np.pi, np.pi))
             @ np.diag([lam, 1.0 / lam])
             @ rotation(rng.uniform(-np.pi, np.pi)))
        V = S.T @ S
        X = 0.5 * rng.standard_normal((2, 2))
        smax = np.linalg.svd(X, compute_uv=False)[0]
        if smax > 0.95:
            X *= 0.95 / smax
        A = rng.standard_normal((2, 2))
        Y = 0.5 * (A.T @ A) + 2.1 * np.eye(2)
        ch = Channel(X=X, Y=Y)
        out = act_chargrid(ch, char_gaussian(V, 0.0, spec))
        ref = char_gaussian(act_variance(ch, V), 0.0, spec)
        worst = max(worst, float(np.abs(out.values - ref.values).max()))
    ok = worst <= 1e-6
    return CheckResult(
        "grid-vs-variance-action",
        ok,
        f"20 random pairs on a {spec.side}^2 grid, max deviation {worst:.3e}")


def convention_pins():
    """Fixed-point checks of the phase-space conventions: normalization,
    vacuum and single-photon peak values, and the regularized P limit."""
    problems = []

    q_w = quasi_from_char(char_vacuum(0.0))
    peak = q_w.values[q_w.side // 2, q_w.side // 2]
    if abs(peak - 1.0 / np.pi) > 1e-8:
        problems.append(f"vacuum Wigner peak {peak:.10f} != 1/pi")
    total = float(q_w.values.sum() * q_w.cell)
    if abs(total - 1.0) > 1e-8:
        problems.append(f"Wigner integral {total:.10f} != 1")

    q_q = quasi_from_char(convert_order(char_vacuum(0.0), -1.0))
    peak_q = q_q.values[q_q.side // 2, q_q.side // 2]
    if abs(peak_q - 1.0 / (2.0 * np.pi)) > 1e-8:
        problems.append(f"vacuum Q peak {peak_q:.10f} != 1/2pi")

    q_f = quasi_from_char(char_fock1(0.0))
    peak_f = q_f.values[q_f.side // 2, q_f.side // 2]
    if abs(peak_f + 1.0 / np.pi) > 1e-8:
        problems.append(f"single-photon Wigner origin {peak_f:.10f} != -1/pi")

    spec = GridSpec(side=257, extent=256.0)
    q_p = quasi_from_char(char_vacuum(1.0 - P_EPS, spec))
    peak_p = q_p.values[q_p.side // 2, q_p.side // 2]
    expected = 1.0 / (np.pi * P_EPS)
    if abs(peak_p - expected) > 1e-4 * expected:
        problems.append(f"regularized vacuum P peak {peak_p:.6f} != {expected:.6f}")
    if q_p.values.min() < -1e-9:
        problems.append(f"regularized vacuum P dips to {q_p.values.min():.3e}")

    ok = not problems
    return CheckResult("convention-pins", ok,
                       "; ".join(problems) if problems else
                       "normalization, vacuum W/Q/P peaks and fock1 dip all pinned")


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
)

SUITES = {
    "table1": (criterion_1, criterion_2, criterion_3),
    "oracles": (criterion_5, criterion_6, criterion_7, criterion_8),
    "fock": (criterion_4,),
    "fft": (criterion_9, convention_pins),
    "all": CRITERIA + (convention_pins,),
}


def run_suite(name):
    """Run one named suite; returns the list of CheckResults."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [fn() for fn in SUITES[name]]
