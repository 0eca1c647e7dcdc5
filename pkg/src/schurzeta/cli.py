"""Command line front end: tables, evaluations and identity sweeps.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 domain error.
"""
from __future__ import annotations

import functools
import hashlib
import itertools
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import click

from .bernoulli import (Kind, bernoulli_table, verify_binomial_relations, verify_hook_bc_relation,
                        verify_hook_recurrence, verify_hook_stirling)
from .reports import IdentityReport, format_fraction
from .shapes import Partition, ShapeError, Tableau, decompose_to_mzv, decompose_to_mzv_star, parse_tableau
from .values import NumericDomainError, ValueWithBound

CACHE_ENV = "SCHURZETA_CACHE_DIR"

EXIT_FAIL, EXIT_INPUT, EXIT_DOMAIN = 1, 2, 3


# ---------------------------------------------------------------------------
# configuration

def load_config(path: str | os.PathLike) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment and dashes in keys become underscores."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.BadParameter(f"line {lineno}: expected 'key = value', got {raw!r}", param_hint="--config")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def _default_map(group: click.Group, values: dict[str, str]) -> dict:
    out = {}
    for name, cmd in group.commands.items():
        if isinstance(cmd, click.Group):
            out[name] = _default_map(cmd, values)
        else:
            defaults = {}
            for p in cmd.params:
                for opt in p.opts:
                    key = opt.lstrip("-").replace("-", "_")
                    if key in values:
                        defaults[p.name] = values[key]
            out[name] = defaults
    return out


# ---------------------------------------------------------------------------
# parsing helpers

def _shape(text: str) -> Partition:
    return Partition.parse(text)


def _weights(text: str, shape: Partition) -> Tableau:
    k = parse_tableau(text, shape)
    for cell, v in k.items():
        if not isinstance(v, int):
            raise ShapeError(f"weight at cell {cell} must be an integer, got {v!r}")
    return k


def _numeric_tableau(text: str, shape: Partition) -> Tableau:
    s = parse_tableau(text, shape)
    for cell, v in s.items():
        if isinstance(v, str):
            raise ShapeError(f"exponent at cell {cell} must be a number, got {v!r}")
    return s


def _numbers(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.strip().strip("()[]").split(",") if tok.strip())
    except ValueError:
        raise ShapeError(f"cannot parse number list {text!r}") from None


def _orders(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ShapeError(f"cannot parse orders {text!r}") from None
    if not out or any(o < 0 for o in out):
        raise ShapeError(f"orders must be non-negative integers, got {text!r}")
    return out


def _expand_orders(orders: tuple[int, ...], shape: Partition) -> tuple[int, ...]:
    c = len(shape.corners)
    if len(orders) == 1:
        return orders * c
    if len(orders) != c:
        raise ShapeError(f"need 1 or {c} orders for shape {shape}, got {len(orders)}")
    return orders


# ---------------------------------------------------------------------------
# output and caching

def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _value_csv(rows: list[dict]) -> str:
    keys = ["value", "bound", "method"]
    lines = [",".join(keys)]
    for r in rows:
        lines.append(",".join(str(r.get(k, "")) for k in keys))
    return "\n".join(lines) + "\n"


def _cache_path(cache_dir: str | None, command: str, config: dict, fmt: str) -> Path | None:
    if not cache_dir:
        return None
    digest = hashlib.sha256(_dumps({"command": command, **config}).encode()).hexdigest()[:32]
    return Path(cache_dir) / f"{command}-{digest}.{fmt}"


def _produce(ctx: click.Context, command: str, config: dict, fmt: str, compute) -> str:
    """Artifact text, read from the cache when present and written to it otherwise."""
    path = _cache_path(ctx.obj.get("cache_dir"), command, config, fmt)
    if path is not None and path.exists():
        return path.read_text(encoding="utf-8")
    text = compute()
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + f".{os.getpid()}.tmp")
        tmp.write_text(text, encoding="utf-8", newline="\n")
        os.replace(tmp, path)
    return text


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8", newline="\n")
    else:
        click.echo(text, nl=False)


def _errors(fn):
    """Map library exceptions onto exit codes with a one-line diagnostic."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except NumericDomainError as exc:
            click.echo(f"domain error: {exc}", err=True)
            sys.exit(EXIT_DOMAIN)
        except (ShapeError, ValueError, KeyError) as exc:
            click.echo(f"input error: {exc}", err=True)
            sys.exit(EXIT_INPUT)

    return wrapper


_format = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
_output = click.option("--output", type=click.Path(dir_okay=False), default=None, help="write here instead of stdout")
_shape_opt = click.option("--shape", required=True, help="partition, e.g. 2,1")


# ---------------------------------------------------------------------------
# commands

@click.group()
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
              help="file of 'key = value' lines; flags override it")
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
              help=f"artifact cache (also ${CACHE_ENV})")
@click.pass_context
def main(ctx: click.Context, config: str | None, cache_dir: str | None):
    """Schur multiple zeta values and Schur type poly-Bernoulli numbers."""
    values = load_config(config) if config else {}
    ctx.default_map = _default_map(main, values)
    ctx.obj = {"cache_dir": cache_dir or os.environ.get(CACHE_ENV) or values.get("cache_dir")}


@main.command()
@_shape_opt
@click.option("--k", "k_text", required=True, help="weight tableau, e.g. [[1,1],[1]]")
@click.option("--kind", type=click.Choice(["B", "C"]), default="B", show_default=True)
@click.option("--orders", default="4", show_default=True, help="one order, or one per corner")
@_format
@_output
@click.pass_context
@_errors
def bernoulli(ctx, shape, k_text, kind, orders, fmt, output):
    """Table of B or C numbers up to the given orders."""
    lam = _shape(shape)
    k = _weights(k_text, lam)
    box = _expand_orders(_orders(orders), lam)
    config = {"shape": list(lam.parts), "k": [list(r) for r in k.rows], "kind": kind, "orders": list(box)}

    def compute():
        table = bernoulli_table(lam, k, box, Kind(kind))
        return table.to_csv() if fmt == "csv" else table.to_json() + "\n"

    _emit(_produce(ctx, "bernoulli", config, fmt, compute), output)


@main.group()
def zeta():
    """Schur multiple zeta values."""


def _value_text(result: ValueWithBound, fmt: str) -> str:
    d = result.to_dict()
    return _value_csv([d]) if fmt == "csv" else _dumps(d)


@zeta.command("eval")
@_shape_opt
@click.option("--s", "s_text", required=True, help="exponent tableau, e.g. [[1],[2]]")
@click.option("--tol", type=float, default=1e-10, show_default=True)
@_format
@_output
@click.pass_context
@_errors
def zeta_eval(ctx, shape, s_text, tol, fmt, output):
    """Direct truncated sum over semi-standard tableaux."""
    from .analytic.zeta import schur_zeta_eval

    lam = _shape(shape)
    s = _numeric_tableau(s_text, lam)
    config = {"shape": list(lam.parts), "s": [list(r) for r in s.rows], "tol": tol}
    _emit(_produce(ctx, "zeta-eval", config, fmt, lambda: _value_text(schur_zeta_eval(lam, s, tol), fmt)), output)


@zeta.command("decompose")
@_shape_opt
@click.option("--s", "s_text", required=True, help="exponent tableau; symbols are allowed")
@click.option("--star", is_flag=True, help="signed zeta-star expansion instead")
@_format
@_output
@_errors
def zeta_decompose(shape, s_text, star, fmt, output):
    """Exact list of (signed) compositions."""
    lam = _shape(shape)
    s = parse_tableau(s_text, lam)
    terms = decompose_to_mzv_star(lam, s) if star else decompose_to_mzv(lam, s)
    if fmt == "csv":
        lines = ["sign,index"] + [f"{t.sign},\"({','.join(str(p) for p in t.parts)})\"" for t in terms]
        text = "\n".join(lines) + "\n"
    else:
        text = _dumps({"shape": list(lam.parts), "star": star, "terms": [str(t) for t in terms]})
    _emit(text, output)


@zeta.command("via-decomposition")
@_shape_opt
@click.option("--s", "s_text", required=True)
@click.option("--tol", type=float, default=1e-10, show_default=True, help="per term")
@click.option("--star", is_flag=True)
@_format
@_output
@click.pass_context
@_errors
def zeta_via(ctx, shape, s_text, tol, star, fmt, output):
    """Sum of MZV (or signed zeta-star) values from the expansion."""
    from .analytic.zeta import schur_zeta_via_decomposition

    lam = _shape(shape)
    s = _numeric_tableau(s_text, lam)
    config = {"shape": list(lam.parts), "s": [list(r) for r in s.rows], "tol": tol, "star": star}
    _emit(_produce(ctx, "zeta-via", config, fmt,
                   lambda: _value_text(schur_zeta_via_decomposition(lam, s, tol, star), fmt)), output)


def _exact_text(value: Fraction, fmt: str) -> str:
    d = {"value": format_fraction(value), "bound": "0/1", "method": "table-lookup"}
    return _value_csv([d]) if fmt == "csv" else _dumps(d)


def _special_index(s: tuple[float, ...]) -> tuple[int, ...] | None:
    """(m_1, ...) when every s is a non-positive integer, None when all are positive."""
    if all(v <= 0 and float(v).is_integer() for v in s):
        return tuple(int(-v) for v in s)
    if all(v > 0 for v in s):
        return None
    raise NumericDomainError(f"s must be all positive or all non-positive integers, got {s}")


@main.command()
@_shape_opt
@click.option("--k", "k_text", required=True)
@click.option("--s", "s_text", required=True, help="one value per corner, e.g. 1.5,2")
@click.option("--method", type=click.Choice(["auto", "quadrature", "series"]), default="auto", show_default=True)
@click.option("--tol", type=float, default=1e-8, show_default=True, help="series oracle tolerance")
@_format
@_output
@click.pass_context
@_errors
def xi(ctx, shape, k_text, s_text, method, tol, fmt, output):
    """xi by quadrature or series; exact at non-positive integers."""
    from .analytic.special import xi_special_value
    from .analytic.xi import xi_eval, xi_series_oracle

    lam = _shape(shape)
    k = _weights(k_text, lam)
    s = _numbers(s_text)
    m = _special_index(s)
    config = {"shape": list(lam.parts), "k": [list(r) for r in k.rows], "s": list(s), "method": method, "tol": tol}

    def compute():
        if m is not None:
            return _exact_text(xi_special_value(lam, k, m), fmt)
        use_series = method == "series" or (method == "auto" and len(lam.corners) > 2)
        result = xi_series_oracle(lam, k, s, tol) if use_series else xi_eval(lam, k, s)
        return _value_text(result, fmt)

    _emit(_produce(ctx, "xi", config, fmt, compute), output)


@main.command()
@_shape_opt
@click.option("--k", "k_text", required=True)
@click.option("--s", "s_text", required=True)
@click.option("--tol", type=float, default=1e-8, show_default=True)
@_format
@_output
@click.pass_context
@_errors
def eta(ctx, shape, k_text, s_text, tol, fmt, output):
    """Classical eta by quadrature; hook eta exactly at non-positive integers."""
    from .analytic.integrals import eta_classical_eval
    from .analytic.special import eta_special_value

    lam = _shape(shape)
    k = _weights(k_text, lam)
    s = _numbers(s_text)
    m = _special_index(s)
    config = {"shape": list(lam.parts), "k": [list(r) for r in k.rows], "s": list(s), "tol": tol}

    def compute():
        if m is not None:
            return _exact_text(eta_special_value(lam, k, m), fmt)
        if lam.parts != (1,):
            raise NumericDomainError("eta at positive arguments is only evaluated for the single box")
        return _value_text(eta_classical_eval(int(k[(1, 1)]), s[0], tol=tol), fmt)

    _emit(_produce(ctx, "eta", config, fmt, compute), output)


# ---------------------------------------------------------------------------
# identity sweeps

def _partitions(n: int, largest: int | None = None):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest or n), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _tableaux(shape: Partition, max_entry: int, keep=lambda cell, v: True):
    cells = shape.cells
    choices = [[v for v in range(1, max_entry + 1) if keep(c, v)] for c in cells]
    for values in itertools.product(*choices):
        yield Tableau.from_cells(shape, dict(zip(cells, values)))


def _hook_corners(shape: Partition):
    return {shape.corners[0], shape.corners[-1]}


_NUMERIC = ("decomposition", "xi-agreement")


def _jobs(identity: str, shapes: list[Partition], opts: dict) -> list[tuple]:
    """Canonical, deterministic list of (identity, shape parts, tableau rows, extra)."""
    max_entry = opts["max_entry"]
    jobs = []
    for lam in shapes:
        if identity == "bc-binomial":
            rng = random.Random(f"{opts['seed']}:{lam.parts}")
            for _ in range(opts["samples"]):
                rows = [[rng.randint(1, max_entry) for _ in range(r)] for r in lam.parts]
                jobs.append((identity, lam.parts, rows, opts["orders"]))
            continue
        if identity in ("hook-recurrence", "hook-bc-relation"):
            corners = _hook_corners(lam)
            tabs = _tableaux(lam, max_entry, lambda c, v: c not in corners or v >= 2)
        elif identity == "decomposition":
            corner_set = set(lam.corners)
            tabs = _tableaux(lam, max_entry, lambda c, v: c not in corner_set or v >= 2)
        elif identity == "xi-agreement":
            corner_set = set(lam.corners)
            tabs = _tableaux(lam, max_entry, lambda c, v: c not in corner_set or v >= 2 or lam.parts == (1,))
        else:
            tabs = _tableaux(lam, max_entry)
        extra = opts["tol"] if identity in _NUMERIC else opts["orders"]
        for k in tabs:
            jobs.append((identity, lam.parts, [list(r) for r in k.rows], extra))
    return jobs


def run_job(job: tuple) -> dict:
    """Evaluate one grid point; top level so worker processes can import it."""
    from .polylog import verify_derivative_lemma, verify_leading_coefficient

    identity, parts, rows, extra = job
    lam = Partition(tuple(parts))
    k = Tableau(lam, rows)
    if identity == "bc-binomial":
        report = verify_binomial_relations(lam, k, extra)
    elif identity == "stirling-hook":
        report = verify_hook_stirling(lam, k, extra)
    elif identity == "hook-recurrence":
        report = verify_hook_recurrence(lam, k, extra)
    elif identity == "hook-bc-relation":
        report = verify_hook_bc_relation(lam, k, extra)
    elif identity == "derivative-lemma":
        report = verify_derivative_lemma(lam, k, extra)
    elif identity == "leading-coefficient":
        report = verify_leading_coefficient(lam, k)
    elif identity == "decomposition":
        from .analytic.zeta import schur_zeta_eval, schur_zeta_via_decomposition

        report = IdentityReport(identity, {"shape": list(parts), "s": rows, "tol": extra})
        direct = schur_zeta_eval(lam, k, extra)
        for star in (False, True):
            report.record_numeric(("star" if star else "mzv",), direct,
                                  schur_zeta_via_decomposition(lam, k, extra, star))
    elif identity == "xi-agreement":
        from .analytic.xi import xi_eval, xi_series_oracle

        report = IdentityReport(identity, {"shape": list(parts), "k": rows, "tol": extra})
        for s in itertools.product((1.0, 1.5, 2.0), repeat=len(lam.corners)):
            report.record_numeric(s, xi_eval(lam, k, s), xi_series_oracle(lam, k, s, extra))
    else:
        raise KeyError(identity)
    return report.to_dict()


IDENTITIES = {
    # name: (default shapes, default orders)
    "bc-binomial": (None, 5),
    "stirling-hook": (((2, 1), (2, 1, 1)), 6),
    "hook-recurrence": (((2, 1), (3, 1, 1)), 5),
    "hook-bc-relation": (((2, 1), (3, 1, 1)), 5),
    "derivative-lemma": (((2, 1), (3, 1), (2, 1, 1)), 8),
    "leading-coefficient": (((2, 1), (3, 1), (2, 1, 1), (2, 1, 1, 1)), 0),
    "decomposition": (((2,), (1, 1), (2, 1), (2, 2)), 0),
    "xi-agreement": (((1,), (1, 1), (2, 1)), 0),
}


def run_verification(identity: str, shapes: list[Partition], opts: dict, jobs: int = 1) -> dict:
    """Fan the grid out over ``jobs`` workers; results keep the canonical grid order."""
    grid = _jobs(identity, shapes, opts)
    if jobs > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            points = list(pool.map(run_job, grid))
    else:
        points = [run_job(j) for j in grid]
    failed = [p for p in points if not p["passed"]]
    return {
        "identity": identity,
        "parameters": {"shapes": [list(s.parts) for s in shapes], **opts},
        "points": points,
        "checked": sum(p["checked"] for p in points),
        "passed": not failed,
        "counterexample": ({"parameters": failed[0]["parameters"], **failed[0]["counterexample"]}
                           if failed else None),
    }


@main.command()
@click.argument("identity", type=click.Choice(sorted(IDENTITIES)))
@click.option("--shape", default=None, help="restrict to one shape")
@click.option("--max-weight", type=int, default=5, show_default=True, help="bc-binomial: all shapes up to this size")
@click.option("--orders", type=int, default=None, help="per-corner order (identity default if omitted)")
@click.option("--max-entry", type=int, default=3, show_default=True, help="largest weight in the grid")
@click.option("--samples", type=int, default=20, show_default=True, help="bc-binomial: tableaux per shape")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=1e-6, show_default=True, help="numeric identities")
@click.option("--jobs", type=int, default=1, show_default=True, help="worker processes")
@_output
@_errors
def verify(identity, shape, max_weight, orders, max_entry, samples, seed, tol, jobs, output):
    """Run an identity over a parameter grid; exit 1 if any point fails."""
    default_shapes, default_orders = IDENTITIES[identity]
    if shape:
        shapes = [_shape(shape)]
    elif default_shapes is None:
        shapes = [Partition(p) for n in range(1, max_weight + 1) for p in _partitions(n)]
    else:
        shapes = [Partition(p) for p in default_shapes]
    opts = {"orders": default_orders if orders is None else orders, "max_entry": max_entry,
            "samples": samples, "seed": seed, "tol": tol}
    start = time.perf_counter()
    result = run_verification(identity, shapes, opts, jobs)
    # wall time goes to stderr so the artifact stays byte-stable
    click.echo(f"{identity}: {'pass' if result['passed'] else 'FAIL'}, {result['checked']} checks, "
               f"{time.perf_counter() - start:.2f}s", err=True)
    _emit(_dumps(result), output)
    if not result["passed"]:
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":
    main()
