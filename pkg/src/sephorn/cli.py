"""Command-line front end.

Exit codes are a stable contract: 0 = separable, 1 = entangled,
2 = inconclusive, 64 = unreadable input or bad usage, 70 = numeric failure.
The environment variable ``SEP_HORN_TOL`` sets the default ``--tol``.
"""

from __future__ import annotations

import concurrent.futures
import json
import sys
from dataclasses import replace
from pathlib import Path

import click
import numpy as np

from . import fileio
from .bipartite import compose_state, decompose_state, normal_form
from .config import DEFAULT, default_positivity_tol
from .criteria import Status, Verdict, analyze
from .decompose import DecompositionOutcome, werner_decompose
from .errors import FileFormatError, SepHornError
from .horn import triple_set
from .states import werner

EXIT_SEPARABLE = 0
EXIT_ENTANGLED = 1
EXIT_INCONCLUSIVE = 2
EXIT_BAD_INPUT = 64
EXIT_NUMERIC = 70

_STATUS_EXIT = {
    Status.SEPARABLE: EXIT_SEPARABLE,
    Status.ENTANGLED: EXIT_ENTANGLED,
    Status.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


@click.group()
def cli():
    """Separability analysis of bipartite quantum states."""


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _verdict_report(path: str, verdict: Verdict, decomposition_file: str | None,
                    structured: bool) -> str:
    if structured:
        doc = {
            "format": "sep-horn-report/1",
            "file": path,
            "status": verdict.status.value,
            "criteria": [
                {"name": c.name, "passed": bool(c.passed),
                 "margin": float(c.margin), "detail": c.detail}
                for c in verdict.criteria
            ],
            "decomposition_file": decomposition_file,
        }
        return json.dumps(doc, indent=1)
    lines = [f"{path}: {verdict.status.value.upper()}"]
    for c in verdict.criteria:
        flag = "pass" if c.passed else "FAIL"
        lines.append(f"  [{flag}] {c.name}: margin={c.margin:.6g}"
                     + (f" ({c.detail})" if c.detail else ""))
    if decomposition_file:
        lines.append(f"  decomposition written to {decomposition_file}")
    if verdict.horn_report is not None:
        hr = verdict.horn_report
        lines.append(f"  inequality diagnostic: feasible={hr.feasible} "
                     f"worst_margin={hr.worst_margin:.6g} "
                     f"violated={len(hr.violated)}")
    return "\n".join(lines)


def _analyze_one(path: str, tol: float, max_iter: int, seed: int):
    text = Path(path).read_text()
    rho, dims = fileio.state_from_text(text)
    cfg = DEFAULT.with_positivity(tol)
    if max_iter != cfg.normal_max_iter:
        cfg = replace(cfg, normal_max_iter=max_iter)
    verdict = analyze(rho, dims[0], dims[1], cfg=cfg, seed=seed)
    decomposition_file = None
    if verdict.status is Status.SEPARABLE and verdict.decomposition is not None:
        decomposition_file = str(Path(path).with_suffix("")) + ".decomposition.json"
        Path(decomposition_file).write_text(
            fileio.decomposition_to_text(verdict.decomposition, dims))
    return verdict, decomposition_file


@cli.command("analyze")
@click.argument("paths", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--tol", type=float, default=None,
              help="Positivity tolerance (default: SEP_HORN_TOL or 1e-9).")
@click.option("--max-iter", type=int, default=500, show_default=True,
              help="Normal-form filtering budget.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for randomized constructions.")
@click.option("--report", type=click.Choice(["text", "structured"]),
              default="text", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Parallel workers for multi-file analysis.")
def cmd_analyze(paths, tol, max_iter, seed, report, jobs):
    """Analyze state files; writes a decomposition next to separable inputs.

    With several PATHS the exit code is the worst (maximum) per-file code.
    """
    tol = default_positivity_tol() if tol is None else tol
    results = {}
    if jobs > 1 and len(paths) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_analyze_one, p, tol, max_iter, seed): p
                       for p in paths}
            for fut in concurrent.futures.as_completed(futures):
                results[futures[fut]] = fut.result()
    else:
        for p in paths:
            results[p] = _analyze_one(p, tol, max_iter, seed)
    code = 0
    for p in paths:
        verdict, dec_file = results[p]
        click.echo(_verdict_report(p, verdict, dec_file, report == "structured"))
        code = max(code, _STATUS_EXIT[verdict.status])
    return code


# ---------------------------------------------------------------------------
# horn-triples
# ---------------------------------------------------------------------------

@cli.command("horn-triples")
@click.argument("n", type=int)
@click.argument("r", type=int)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write to a file instead of stdout.")
def cmd_horn_triples(n, r, out):
    """Dump the admissible index triples of cardinality R in 1..N."""
    if not 1 <= r < n or n > 16:
        raise click.UsageError(f"need 1 <= r < n <= 16, got n={n}, r={r}")
    ts = triple_set(n, r)

    def fmt(s):
        return "{" + ",".join(str(x) for x in s) + "}"

    lines = [f"{r} I:{fmt(I)} J:{fmt(J)} K:{fmt(K)}" for I, J, K in ts]
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
        click.echo(f"wrote {len(lines)} triples to {out}")
    else:
        click.echo(text, nl=False)
    return 0


# ---------------------------------------------------------------------------
# werner
# ---------------------------------------------------------------------------

@cli.command("werner")
@click.argument("dim", type=int)
@click.argument("phi", type=float)
@click.option("--decompose", "want_decomposition", is_flag=True,
              help="Also write the explicit decomposition file.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="State file path (default: werner_<dim>_phi<phi>.state.json).")
def cmd_werner(dim, phi, want_decomposition, seed, out):
    """Emit a Werner state file and report its separability."""
    if dim < 2:
        raise click.UsageError(f"dim must be >= 2, got {dim}")
    try:
        state = werner(dim, phi)
    except SepHornError as exc:
        raise click.UsageError(str(exc)) from exc
    path = Path(out) if out else Path(f"werner_{dim}_phi{phi}.state.json")
    path.write_text(fileio.state_to_text(compose_state(state), (dim, dim)))
    click.echo(f"state written to {path}")

    outcome = werner_decompose(dim, phi, seed)
    if isinstance(outcome, DecompositionOutcome):
        if outcome is DecompositionOutcome.ENTANGLED:
            click.echo("status: ENTANGLED")
            return EXIT_ENTANGLED
        click.echo("status: INCONCLUSIVE (no closed-form decomposition)")
        return EXIT_INCONCLUSIVE
    click.echo(f"status: SEPARABLE ({len(outcome)} components)")
    if want_decomposition:
        dec_path = path.with_suffix("").with_suffix("")  # strip .state.json
        dec_file = Path(str(dec_path) + ".decomposition.json")
        dec_file.write_text(fileio.decomposition_to_text(outcome, (dim, dim)))
        click.echo(f"decomposition written to {dec_file}")
    return EXIT_SEPARABLE


# ---------------------------------------------------------------------------
# normal-form
# ---------------------------------------------------------------------------

@cli.command("normal-form")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Filtered state file (default: <input>.normal.json).")
@click.option("--max-iter", type=int, default=500, show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
def cmd_normal_form(path, out, max_iter, tol):
    """Filter a state toward maximally mixed marginals and report convergence."""
    rho, dims = fileio.state_from_text(Path(path).read_text())
    d = decompose_state(rho, dims[0], dims[1])
    result = normal_form(d, max_iter=max_iter, tol=tol)
    filtered = compose_state(result.state)
    out_path = Path(out) if out else Path(str(Path(path).with_suffix("")) + ".normal.json")
    out_path.write_text(fileio.state_to_text(filtered, dims))
    click.echo(f"filtered state written to {out_path}")
    click.echo(f"converged: {result.converged}")
    click.echo(f"iterations: {result.iterations}")
    click.echo(f"marginal norms: |a|={np.linalg.norm(result.state.a):.3e} "
               f"|b|={np.linalg.norm(result.state.b):.3e}")
    if dims == (2, 2) and not result.converged:
        click.echo(f"best Bell fidelity of filtered state: "
                   f"{_best_bell_fidelity(filtered):.6f}")
    return 0


def _best_bell_fidelity(rho: np.ndarray) -> float:
    isq = 1.0 / np.sqrt(2.0)
    kets = [np.array([isq, 0, 0, isq]), np.array([isq, 0, 0, -isq]),
            np.array([0, isq, isq, 0]), np.array([0, isq, -isq, 0])]
    return max(float(np.real(k.conj() @ rho @ k)) for k in kets)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def main(argv=None) -> None:
    try:
        code = cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(EXIT_BAD_INPUT)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_BAD_INPUT)
    except FileFormatError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BAD_INPUT)
    except SepHornError as exc:
        click.echo(f"numeric failure: {exc}", err=True)
        sys.exit(EXIT_NUMERIC)
    sys.exit(int(code) if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
