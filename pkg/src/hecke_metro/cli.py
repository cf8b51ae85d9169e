"""Command-line front end for the deformed-Metropolis toolkit.

Four subcommands drive the library end to end:

``analyze``
    Per-pass chi-square distances for a chosen scan: the closed form from
    the irreducible-block data next to the brute-force kernel computation
    (when the group is small enough to enumerate), the exact total
    variation distance, and the generic bound ``tv^2 <= chisq / 4``.

``verify``
    The invariant suite for one configured instance: generator kernels
    against left multiplication in the deformed algebra, the long scan
    against the squared longest element, stationarity, detailed balance,
    the trace identity for the pi-averaged chi-square, the long-scan
    trace spectrum, and the two numerical identities satisfied by the
    block data.  Exit code 1 if anything fails.

``sample``
    Draws from the exact stationary sampler, with the empirical length
    moments checked against the closed-form mean and variance (and the
    empirical total variation, when the group fits under the cap).

``bounds``
    Evaluates the closed-form upper bounds and the lead-constant table
    over an ``(n, theta, c)`` grid and emits CSV.

Exact mode keeps every number a :class:`fractions.Fraction` end to end
and serializes rationals as ``"p/q"`` strings, never floats.  Float mode
unlocks formulas that involve cosines (the dihedral random scan) and
groups beyond the enumeration cap, at the price of skipping the
brute-force columns once enumeration is impossible.

Output files are written atomically: the text goes to a temporary file
in the target directory which is then renamed over the destination, so a
crash never leaves a half-written table.  The env var ``HECKE_METRO_CAP``
overrides the enumeration cap for all commands.

Exit codes: 0 when every check passes, 1 when a verification-style check
fails (a ``verify`` invariant, an ``analyze`` row with ``match=false``,
or a ``sample`` mean more than three standard errors off), 2 for usage
errors (bad flags, theta out of range, cap exceeded in exact mode).
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction

import click
import numpy as np

from . import __version__, chains, coxeter, hecke, sampler, spectral
from .coxeter import CapExceededError, GroupFamily

__all__ = ["RunConfig", "main"]


# --------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class RunConfig:
    """Validated bundle of the settings shared by the subcommands.

    ``theta_raw`` is kept as the string the user typed ("1/2", "0.5", ...)
    so that output files echo the request verbatim; :attr:`theta` parses
    it per ``mode``.  Exact mode insists on a group small enough to
    enumerate, because its whole point is that the brute-force columns
    exist and every number is a rational.
    """

    family: GroupFamily
    theta_raw: str
    mode: str = "exact"
    scan: str = "long"
    lmin: int = 1
    lmax: int = 1
    averaged: bool = False
    seed: int = 4
    fmt: str = "json"
    out: str | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.scan not in ("long", "short", "random"):
            raise ValueError(f"unknown scan {self.scan!r}")
        if self.fmt not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.fmt!r}")
        if not 1 <= self.lmin <= self.lmax:
            raise ValueError("need 1 <= lmin <= lmax")
        theta = Fraction(self.theta_raw)  # raises ValueError on junk
        if not 0 < theta <= 1:
            raise ValueError(f"theta must be in (0, 1], got {self.theta_raw}")
        if self.mode == "exact" and self.family.order > coxeter.enumeration_cap():
            raise CapExceededError(
                f"|{self.family}| = {self.family.order} exceeds the enumeration "
                f"cap {coxeter.enumeration_cap()}; exact mode needs the full "
                "group (rerun with --mode float or raise HECKE_METRO_CAP)"
            )

    @property
    def theta(self) -> Fraction | float:
        value = Fraction(self.theta_raw)
        return value if self.mode == "exact" else float(value)

    def as_dict(self, command: str) -> dict:
        return {
            "command": command,
            "family": self.family.kind,
            "n": self.family.n,
            "theta": self.theta_raw,
            "mode": self.mode,
            "scan": self.scan,
            "lmin": self.lmin,
            "lmax": self.lmax,
            "averaged": self.averaged,
            "seed": self.seed,
        }


def _family(kind: str, n: int) -> GroupFamily:
    try:
        return GroupFamily(kind, n)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _config(**kwargs) -> RunConfig:
    try:
        return RunConfig(**kwargs)
    except (ValueError, CapExceededError) as exc:
        raise click.UsageError(str(exc)) from exc


_PROVENANCE = {
    "tool": "hecke-metro",
    "version": __version__,
    "description": "Metropolis scans on reflection groups via the deformed "
    "group algebra; closed forms come from the irreducible-block data, "
    "oracle columns from exact kernel arithmetic.",
}


# --------------------------------------------------------------------------
# serialization


def _rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _json_value(x):
    """Fractions as "p/q" strings; floats stay floats; None/bool pass through."""
    if isinstance(x, Fraction):
        return _rational_str(x)
    if x is None or isinstance(x, (bool, int, str)):
        return x
    return float(x)


def _csv_cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return _rational_str(x)
    return str(x)


def _emit(text: str, out: str | None) -> None:
    """Write atomically to ``out``, or to stdout when no path was given."""
    if out is None:
        click.echo(text, nl=False)
        return
    directory = os.path.dirname(os.path.abspath(out)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".hecke-metro-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _csv_text(fieldnames: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(row.get(k)) for k in fieldnames})
    return buf.getvalue()


# --------------------------------------------------------------------------
# analyze


def _closed_form(cfg: RunConfig, ell: int):
    """Dispatch to the closed-form chi-square for the configured scan.

    The hypercube short scan visits every generator twice, which is
    exactly this family's long recipe, so it reuses the long-scan forms.
    Scans without a closed form (symmetric random, dihedral short) are
    usage errors rather than silently falling back to brute force.
    """
    family, theta, scan = cfg.family, cfg.theta, cfg.scan
    if scan == "long" or (scan == "short" and family.kind == "hypercube"):
        if cfg.averaged:
            return spectral.long_scan_avg_chisq(family, theta, ell)
        return spectral.long_scan_chisq(family, theta, ell)
    if scan == "short":
        if family.kind == "symmetric":
            return spectral.short_scan_chisq_symmetric(
                family.n, theta, ell, averaged=cfg.averaged
            )
        raise click.UsageError(
            "no closed form for the dihedral short scan; use --scan long or random"
        )
    # random scan
    if family.kind == "hypercube":
        if cfg.averaged:
            raise click.UsageError(
                "--averaged is not available for the hypercube random scan"
            )
        return spectral.random_scan_chisq_hypercube(family.n, theta, ell)
    if family.kind == "dihedral":
        if cfg.mode == "exact":
            raise click.UsageError(
                "the dihedral random-scan closed form involves cosines; "
                "rerun with --mode float"
            )
        return spectral.dihedral_random_scan_chisq(
            family.n, theta, ell, averaged=cfg.averaged
        )
    raise click.UsageError(
        "no closed form for the symmetric random scan; use --scan long or short"
    )


def _scan_kernel(cfg: RunConfig) -> chains.Kernel:
    if cfg.scan == "long":
        return chains.long_scan_kernel(cfg.family, cfg.theta)
    if cfg.scan == "short":
        return chains.short_scan_kernel(cfg.family, cfg.theta)
    return chains.random_scan_kernel(cfg.family, cfg.theta)


def _match(formula, oracle, mode: str) -> bool:
    if mode == "exact":
        return formula == oracle
    return math.isclose(float(formula), float(oracle), rel_tol=1e-9, abs_tol=1e-15)


def _analyze_rows(cfg: RunConfig) -> list[dict]:
    within_cap = cfg.family.order <= coxeter.enumeration_cap()
    rows: list[dict] = []
    kernel = dist = pi = None
    if within_cap:
        kernel = _scan_kernel(cfg)
        if not cfg.averaged:
            pi = chains.stationary(cfg.family, kernel.theta)
            dist = chains.point_mass(cfg.family, coxeter.identity(cfg.family))
            dist = chains.evolve(kernel, dist, cfg.lmin - 1)
    for ell in range(cfg.lmin, cfg.lmax + 1):
        formula = _closed_form(cfg, ell)
        oracle = tv = None
        if within_cap:
            if cfg.averaged:
                oracle = chains.average_start_chi_square(kernel, ell)
            else:
                dist = chains.evolve(kernel, dist, 1)
                oracle = chains.chi_square(dist, pi)
                tv = chains.tv_distance(dist, pi)
        if cfg.mode == "float":
            oracle = None if oracle is None else float(oracle)
            tv = None if tv is None else float(tv)
        rows.append(
            {
                "l": ell,
                "chisq_formula": formula,
                "chisq_oracle": oracle,
                "tv": tv,
                "tv_bound": formula / 4,
                "match": None if oracle is None else _match(formula, oracle, cfg.mode),
            }
        )
    return rows


_ANALYZE_COLUMNS = ["l", "chisq_formula", "chisq_oracle", "tv", "tv_bound", "match"]


# --------------------------------------------------------------------------
# the click group


@click.group()
@click.version_option(__version__, prog_name="hecke-metro")
def main() -> None:
    """Metropolis chains on reflection groups, driven through the deformed
    group algebra: closed-form chi-square decay, invariant verification,
    exact stationary sampling, and bound tables."""


_FAMILY_OPTION = click.option(
    "--family",
    "family_kind",
    type=click.Choice(["symmetric", "hypercube", "dihedral"]),
    required=True,
    help="Reflection-group family.",
)
_N_OPTION = click.option("--n", type=int, required=True, help="Family size parameter.")
_THETA_OPTION = click.option(
    "--theta",
    "theta_raw",
    required=True,
    help='Bias parameter in (0, 1]; a rational string like "1/2" or a decimal.',
)
_OUT_OPTION = click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Output path (atomic write); stdout when omitted.",
)


@main.command()
@_FAMILY_OPTION
@_N_OPTION
@_THETA_OPTION
@click.option(
    "--scan",
    type=click.Choice(["long", "short", "random"]),
    default="long",
    show_default=True,
    help="Which kernel to analyze.",
)
@click.option("--lmin", type=int, default=1, show_default=True)
@click.option("--lmax", type=int, required=True, help="Last pass count to report.")
@click.option(
    "--averaged",
    is_flag=True,
    help="pi-weighted average over starting states instead of the identity start.",
)
@click.option(
    "--mode",
    type=click.Choice(["exact", "float"]),
    default="exact",
    show_default=True,
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
)
@_OUT_OPTION
@click.pass_context
def analyze(ctx, family_kind, n, theta_raw, scan, lmin, lmax, averaged, mode, fmt, out):
    """Chi-square decay of a scan: closed form vs. brute force per pass.

    Emits one row per pass count l with the closed-form chi-square, the
    brute-force value from exact kernel powers (when the group is within
    the enumeration cap), the total variation distance, the bound
    tv^2 <= chisq/4, and a match flag.  Exits 1 if any row mismatches.
    """
    cfg = _config(
        family=_family(family_kind, n),
        theta_raw=theta_raw,
        mode=mode,
        scan=scan,
        lmin=lmin,
        lmax=lmax,
        averaged=averaged,
        fmt=fmt,
        out=out,
    )
    try:
        rows = _analyze_rows(cfg)
    except CapExceededError as exc:
        raise click.UsageError(str(exc)) from exc
    if cfg.fmt == "csv":
        text = _csv_text(_ANALYZE_COLUMNS, rows)
    else:
        text = _json_text(
            {
                "config": cfg.as_dict("analyze"),
                "rows": [
                    {k: _json_value(row[k]) for k in _ANALYZE_COLUMNS} for row in rows
                ],
                "provenance": _PROVENANCE,
            }
        )
    _emit(text, cfg.out)
    if any(row["match"] is False for row in rows):
        ctx.exit(1)


# --------------------------------------------------------------------------
# verify


def _verify_checks(family: GroupFamily, theta: Fraction, perturb: bool):
    """Yield (name, thunk) pairs; each thunk returns True on success."""
    q = 1 / theta
    gens = coxeter.generators(family)
    kernels = {i: chains.metropolis_kernel(family, i, theta) for i in gens}
    if perturb:
        broken = kernels[1]
        num = broken.num.copy()
        target = int(np.argmax(num[0]))  # the single off-diagonal move from id
        num[0, 0], num[0, target] = num[0, target], num[0, 0]
        kernels[1] = chains.Kernel(family, broken.theta, num, broken.den, (1,))
    pi = chains.stationary(family, theta)
    long_kernel = chains.long_scan_kernel(family, theta)

    def generator_kernels_match_algebra() -> bool:
        for i in gens:
            block = hecke.left_mult_matrix(hecke.tilde_word(family, q, (i,)))
            if not (kernels[i].matrix == block).all():
                return False
        return True

    def long_scan_is_squared_longest_element() -> bool:
        word = tuple(reversed(chains.long_recipe(family)))
        block = hecke.left_mult_matrix(hecke.tilde_word(family, q, word))
        return bool((long_kernel.matrix == block).all())

    def generator_kernels_preserve_stationary() -> bool:
        return all(
            (chains.evolve(kernels[i], pi, 1).probs == pi.probs).all() for i in gens
        )

    def generator_kernels_reversible() -> bool:
        return all(chains.check_reversible(kernels[i], pi) for i in gens)

    def averaged_chi_square_equals_trace() -> bool:
        return chains.average_start_chi_square(long_kernel, 1) == (
            chains.trace_of_power(long_kernel, 2) - 1
        )

    def long_scan_traces_match_block_sum() -> bool:
        return all(
            chains.trace_of_power(long_kernel, m)
            == spectral.long_scan_trace(family, theta, m)
            for m in range(1, 6)
        )

    def squared_dimensions_sum_to_order() -> bool:
        return sum(rep.d**2 for rep in spectral.irreps(family)) == family.order

    def generic_degrees_sum_to_length_polynomial() -> bool:
        return spectral.sum_d_t(family, q) == coxeter.poincare_polynomial(family, q)

    return [
        ("generator kernels == algebra left multiplication", generator_kernels_match_algebra),
        ("long scan == squared longest element", long_scan_is_squared_longest_element),
        ("generator kernels preserve stationary law", generator_kernels_preserve_stationary),
        ("generator kernels reversible", generator_kernels_reversible),
        ("averaged chi-square == trace identity", averaged_chi_square_equals_trace),
        ("long-scan traces match block sum (m=1..5)", long_scan_traces_match_block_sum),
        ("squared dimensions sum to group order", squared_dimensions_sum_to_order),
        ("generic degrees sum to length polynomial", generic_degrees_sum_to_length_polynomial),
    ]


@main.command()
@_FAMILY_OPTION
@_N_OPTION
@_THETA_OPTION
@click.option(
    "--perturb-kernel",
    is_flag=True,
    hidden=True,
    help="Negative control: corrupt one generator kernel before checking.",
)
@click.pass_context
def verify(ctx, family_kind, n, theta_raw, perturb_kernel):
    """Run the invariant suite for one instance; exit 1 on any failure.

    Theta is always parsed exactly here (any decimal or p/q string is a
    rational), so every check is an exact integer comparison.
    """
    family = _family(family_kind, n)
    cfg = _config(family=family, theta_raw=theta_raw, mode="exact")
    checks = _verify_checks(family, cfg.theta, perturb_kernel)
    failures = 0
    for name, thunk in checks:
        try:
            ok = thunk()
        except Exception as exc:  # a crash is a failure, not a crash of the suite
            ok = False
            click.echo(f"FAIL {name} (error: {exc})")
        else:
            click.echo(("PASS " if ok else "FAIL ") + name)
        failures += not ok
    click.echo(f"{len(checks) - failures}/{len(checks)} checks passed")
    if failures:
        ctx.exit(1)


# --------------------------------------------------------------------------
# sample


@main.command()
@_FAMILY_OPTION
@_N_OPTION
@_THETA_OPTION
@click.option(
    "--num-samples", "-N", type=int, default=1000, show_default=True
)
@click.option("--seed", type=int, default=4, show_default=True)
@_OUT_OPTION
@click.pass_context
def sample(ctx, family_kind, n, theta_raw, num_samples, seed, out):
    """Draw exact stationary samples and summarize the fit.

    The summary compares the empirical length mean/variance with the
    closed forms, reports a z-score for the mean, and (when the group is
    within the enumeration cap) the empirical total variation distance.
    Same seed, same output, byte for byte.  Exits 1 if the mean lands
    more than three standard errors from the prediction.
    """
    if num_samples <= 0:
        raise click.UsageError("--num-samples must be positive")
    family = _family(family_kind, n)
    try:
        cfg = RunConfig(family=family, theta_raw=theta_raw, seed=seed, out=out)
    except CapExceededError:
        # sampling itself never enumerates; only the TV summary needs the cap
        cfg = _config(family=family, theta_raw=theta_raw, mode="float", seed=seed, out=out)
    theta = Fraction(theta_raw)
    rng = sampler.random_source(seed)
    draws = [sampler.mallows_sample(family, theta, rng) for _ in range(num_samples)]
    lengths = np.array([coxeter.length(w) for w in draws], dtype=float)
    moments = sampler.length_moments(family, theta)
    predicted_mean = float(moments.mean)
    predicted_variance = float(moments.variance)
    se = math.sqrt(predicted_variance / num_samples)
    mean = float(lengths.mean())
    z = 0.0 if se == 0 else (mean - predicted_mean) / se

    empirical_tv = None
    if family.order <= coxeter.enumeration_cap():
        pi = chains.stationary(family, theta)
        counts = np.zeros(family.order)
        for w in draws:
            counts[chains.element_index(family, w)] += 1
        freqs = counts / num_samples
        empirical_tv = float(
            sum(abs(f - float(p)) for f, p in zip(freqs, pi.probs)) / 2
        )

    payload = {
        "config": {
            "command": "sample",
            "family": family.kind,
            "n": family.n,
            "theta": theta_raw,
            "num_samples": num_samples,
            "seed": seed,
        },
        "summary": {
            "length_mean": mean,
            "length_variance": float(lengths.var(ddof=1)) if num_samples > 1 else 0.0,
            "predicted_mean": predicted_mean,
            "predicted_variance": predicted_variance,
            "mean_z_score": z,
            "empirical_tv": empirical_tv,
        },
        "rows": [list(w.payload) for w in draws],
        "provenance": _PROVENANCE,
    }
    _emit(_json_text(payload), cfg.out)
    if abs(z) > 3:
        ctx.exit(1)


# --------------------------------------------------------------------------
# bounds


_BOUND_COLUMNS = ["family", "kind", "n", "theta", "c", "value"]


def _bound_rows(ns: tuple[int, ...], thetas: tuple[float, ...], cs: tuple[float, ...]):
    rows = []
    for n in ns:
        for theta in thetas:
            for c in cs:
                rows.append(
                    {
                        "family": "symmetric",
                        "kind": "short_scan_start",
                        "n": n,
                        "theta": theta,
                        "c": c,
                        "value": spectral.bound_symmetric_scans(n, theta, "short_start", c),
                    }
                )
                rows.append(
                    {
                        "family": "symmetric",
                        "kind": "short_scan_averaged",
                        "n": n,
                        "theta": theta,
                        "c": c,
                        "value": spectral.bound_symmetric_scans(n, theta, "short_avg", c),
                    }
                )
                for scan in ("random", "systematic"):
                    rows.append(
                        {
                            "family": "hypercube",
                            "kind": f"{scan}_scan",
                            "n": n,
                            "theta": theta,
                            "c": c,
                            "value": spectral.bound_hypercube(n, theta, c, scan),
                        }
                    )
                rows.append(
                    {
                        "family": "dihedral",
                        "kind": "random_scan",
                        "n": n,
                        "theta": theta,
                        "c": c,
                        "value": spectral.bound_dihedral_random_scan(
                            n, theta, max(1, round(c))
                        ),
                    }
                )
            for which, kind in (
                ("long_start", "long_scan_start"),
                ("long_avg", "long_scan_averaged"),
            ):
                rows.append(
                    {
                        "family": "symmetric",
                        "kind": kind,
                        "n": n,
                        "theta": theta,
                        "c": 1,
                        "value": spectral.bound_symmetric_scans(n, theta, which),
                    }
                )
            rows.append(
                {
                    "family": "dihedral",
                    "kind": "single_pass",
                    "n": n,
                    "theta": theta,
                    "c": 1,
                    "value": float(spectral.bound_dihedral_long_scan(n, theta)),
                }
            )
            (lead,) = spectral.lead_constant_table([theta], n)
            rows.append(
                {
                    "family": "hypercube",
                    "kind": "lead_constant_random",
                    "n": n,
                    "theta": theta,
                    "c": None,
                    "value": lead.random_scan,
                }
            )
            rows.append(
                {
                    "family": "hypercube",
                    "kind": "lead_constant_systematic",
                    "n": n,
                    "theta": theta,
                    "c": None,
                    "value": lead.systematic_scan,
                }
            )
    return rows


@main.command()
@click.option(
    "--n",
    "ns",
    type=int,
    multiple=True,
    default=(100,),
    show_default=True,
    help="Size parameters (repeatable).",
)
@click.option(
    "--theta",
    "theta_raws",
    multiple=True,
    required=True,
    help="Bias parameters in (0, 1), repeatable; rational strings or decimals.",
)
@click.option(
    "--c",
    "cs",
    type=float,
    multiple=True,
    default=tuple(float(c) for c in range(1, 11)),
    show_default=False,
    help="Slack constants (repeatable, default 1..10).  For dihedral "
    "random-scan rows the value doubles as the pass count.",
)
@_OUT_OPTION
def bounds(ns, theta_raws, cs, out):
    """Closed-form mixing bounds and lead constants over an (n, theta, c) grid.

    Rows with kind long_scan_* and single_pass are one-pass bounds, so
    their c column is fixed at 1; the lead-constant rows have no c at all.
    All values are floats (CSV), largest grids in seconds.
    """
    thetas = []
    for raw in theta_raws:
        try:
            value = float(Fraction(raw))
        except ValueError as exc:
            raise click.UsageError(f"cannot parse theta {raw!r}") from exc
        if not 0 < value < 1:
            raise click.UsageError(
                f"bounds need theta strictly inside (0, 1) (log theta appears); got {raw}"
            )
        thetas.append(value)
    for n in ns:
        if n < 1:
            raise click.UsageError(f"n must be positive, got {n}")
    for c in cs:
        if c <= 0:
            raise click.UsageError(f"slack constants must be positive, got {c}")
    _emit(_csv_text(_BOUND_COLUMNS, _bound_rows(ns, tuple(thetas), cs)), out)


if __name__ == "__main__":
    main(prog_name="hecke-metro")
