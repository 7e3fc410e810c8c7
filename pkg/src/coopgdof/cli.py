"""Command-line front end and the JSON scheme document format.

Exit codes: 0 success, 2 usage or malformed input, 3 verification failure,
4 simulation mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Optional, Sequence

from .channel import ChannelParams, LevelBand, Regime, classify_regime, d_bc, d_ic
from .detsim import GridError, NotVerifiedError, grain_for, simulate
from .sampling import sample_budgets, sample_params
from .scheme import Codeword, DecodingPlan, Msg, Placement, Scheme, Step
from .synth import synthesize
from .theorems import (
    CoopBudget,
    Mode,
    SplitBudget,
    converse_bounds,
    curve,
    pi_plus,
    pi_star,
    sum_gdof,
)
from .verify import StructuralError, verify

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_SIM = 0, 2, 3, 4
WORKERS_ENV = "COOPGDOF_WORKERS"


class UsageError(ValueError):
    pass


class SchemaError(ValueError):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


# ---- rationals -------------------------------------------------------------

def parse_rational(tok: str) -> Fraction:
    """'n/d', an integer or a decimal string, converted exactly."""
    try:
        v = Fraction(tok.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed rational {tok!r}") from None
    if v < 0:
        raise UsageError(f"negative value {tok!r}")
    return v


def parse_alpha(text: str) -> ChannelParams:
    toks = text.split(",")
    if len(toks) != 4:
        raise UsageError(f"--alpha needs four values a11,a22,a12,a21, got {text!r}")
    return ChannelParams(*(parse_rational(t) for t in toks))


def render(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def as_pair(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def _from_pair(v: Any, path: str) -> Fraction:
    if (not isinstance(v, list) or len(v) != 2
            or not all(isinstance(t, int) and not isinstance(t, bool) for t in v)):
        raise SchemaError(path, "expected [numerator, denominator] integers")
    if v[1] <= 0:
        raise SchemaError(path, "denominator must be positive")
    return Fraction(v[0], v[1])


# ---- scheme documents ------------------------------------------------------

def scheme_to_doc(s: Scheme) -> dict:
    p = s.params
    return {
        "schema": SCHEMA,
        "params": {k: as_pair(getattr(p, k)) for k in ("a11", "a22", "a12", "a21")},
        "budget": {"mode": s.budget.mode.value, "pi": as_pair(s.budget.pi)},
        "case_id": s.case_id,
        "codewords": [
            {
                "msg": c.msg.value,
                "gdof": as_pair(c.gdof),
                "placements": [
                    {"tx": pl.tx, "hi": as_pair(pl.band.hi),
                     "lo": None if pl.band.lo is None else as_pair(pl.band.lo)}
                    for pl in c.placements
                ],
            }
            for c in s.codewords
        ],
        "plans": [
            {"rx": pl.rx, "steps": [[m.value for m in st.msgs] for st in pl.steps]}
            for pl in s.plans
        ],
        "claimed": [as_pair(x) for x in s.claimed],
        "w0c_share": [as_pair(x) for x in s.w0c_share],
    }


def _get(d: Any, key: str, path: str, kind=None):
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    if key not in d:
        raise SchemaError(f"{path}.{key}", "missing field")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise SchemaError(f"{path}.{key}", f"expected {kind.__name__}")
    return v


def _msg(v: Any, path: str) -> Msg:
    try:
        return Msg(v)
    except ValueError:
        raise SchemaError(path, f"unknown sub-message {v!r}") from None


def doc_to_scheme(doc: Any) -> Scheme:
    if _get(doc, "schema", "$") != SCHEMA:
        raise SchemaError("$.schema", f"unsupported schema {doc.get('schema')!r}")
    pd = _get(doc, "params", "$", dict)
    try:
        params = ChannelParams(*(_from_pair(_get(pd, k, "$.params"), f"$.params.{k}")
                                 for k in ("a11", "a22", "a12", "a21")))
    except ValueError as e:
        if isinstance(e, SchemaError):
            raise
        raise SchemaError("$.params", str(e)) from None
    bd = _get(doc, "budget", "$", dict)
    try:
        budget = CoopBudget(Mode(_get(bd, "mode", "$.budget")), _from_pair(_get(bd, "pi", "$.budget"), "$.budget.pi"))
    except ValueError as e:
        if isinstance(e, SchemaError):
            raise
        raise SchemaError("$.budget", str(e)) from None
    cws = []
    for i, cd in enumerate(_get(doc, "codewords", "$", list)):
        path = f"$.codewords[{i}]"
        pls = []
        for j, pld in enumerate(_get(cd, "placements", path, list)):
            pp = f"{path}.placements[{j}]"
            tx = _get(pld, "tx", pp, int)
            lo = _get(pld, "lo", pp)
            try:
                band = LevelBand(_from_pair(_get(pld, "hi", pp), f"{pp}.hi"),
                                 None if lo is None else _from_pair(lo, f"{pp}.lo"))
            except ValueError as e:
                if isinstance(e, SchemaError):
                    raise
                raise SchemaError(pp, str(e)) from None
            pls.append(Placement(tx, band))
        cws.append(Codeword(_msg(_get(cd, "msg", path), f"{path}.msg"),
                            _from_pair(_get(cd, "gdof", path), f"{path}.gdof"), tuple(pls)))
    plans = []
    pl_list = _get(doc, "plans", "$", list)
    if len(pl_list) != 2:
        raise SchemaError("$.plans", "expected two decoding plans")
    for i, pd_ in enumerate(pl_list):
        path = f"$.plans[{i}]"
        steps = []
        for j, st in enumerate(_get(pd_, "steps", path, list)):
            if not isinstance(st, list):
                raise SchemaError(f"{path}.steps[{j}]", "expected a list of sub-messages")
            steps.append(Step(tuple(_msg(m, f"{path}.steps[{j}]") for m in st)))
        plans.append(DecodingPlan(_get(pd_, "rx", path, int), tuple(steps)))
    claimed = _get(doc, "claimed", "$", list)
    if len(claimed) != 4:
        raise SchemaError("$.claimed", "expected four values (d11, d22, d01, d02)")
    share = doc.get("w0c_share", [[0, 1], [0, 1]])
    if not isinstance(share, list) or len(share) != 2:
        raise SchemaError("$.w0c_share", "expected two values")
    return Scheme(
        params=params,
        budget=budget,
        codewords=tuple(cws),
        plans=tuple(plans),  # type: ignore[arg-type]
        claimed=tuple(_from_pair(v, f"$.claimed[{i}]") for i, v in enumerate(claimed)),  # type: ignore[arg-type]
        w0c_share=tuple(_from_pair(v, f"$.w0c_share[{i}]") for i, v in enumerate(share)),  # type: ignore[arg-type]
        case_id=str(doc.get("case_id", "")),
    )


def dumps(s: Scheme) -> str:
    return json.dumps(scheme_to_doc(s), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Scheme:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"not valid JSON ({e})") from None
    return doc_to_scheme(doc)


# ---- reports ---------------------------------------------------------------

def compute_report(p: ChannelParams, b: CoopBudget, split: Optional[SplitBudget] = None) -> dict:
    value, bs = sum_gdof(p, b)
    rep = {
        "regime": classify_regime(p).value,
        "mode": b.mode.value,
        "pi": b.pi,
        "D_IC": d_ic(p),
        "D_BC": d_bc(p),
        "bounds": bs.as_dict(),
        "active": list(bs.active),
        "sum_gdof": value,
        "pi_star": pi_star(p),
        "pi_plus": pi_plus(p),
    }
    if split is not None:
        cb = converse_bounds(p, split)
        rep["split"] = {"pi01": split.pi01, "pi02": split.pi02,
                        "bounds": cb.as_dict(), "active": list(cb.active), "value": cb.value}
    return rep


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return render(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _flatten(rep: dict, prefix: str = "") -> list[tuple[str, Any]]:
    rows: list[tuple[str, Any]] = []
    for k, v in rep.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            rows += _flatten(v, key + ".")
        elif isinstance(v, list):
            rows.append((key, ";".join(str(t) for t in v)))
        else:
            rows.append((key, v))
    return rows


def write_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([render(v) if isinstance(v, Fraction) else v for v in r])
    return buf.getvalue()


def _num_cells(x: Any) -> list[Any]:
    if isinstance(x, Fraction):
        return [render(x), repr(float(x))]
    return [x, ""]


def report_csv(rep: dict) -> str:
    return write_csv(["key", "rational", "float"], [[k, *_num_cells(v)] for k, v in _flatten(rep)])


def verify_report(s: Scheme) -> dict:
    r = verify(s)
    return {
        "ok": r.ok,
        "case_id": s.case_id,
        "totals": list(r.totals),
        "claimed": list(s.claimed),
        "violations": [
            {"rx": f.rx, "step": f.step, "constraint": f.constraint, "lhs": f.lhs, "rhs": f.rhs}
            for f in r.violations
        ],
    }


# ---- figure data -----------------------------------------------------------

FIG2_POINT = ChannelParams(Fraction(6, 5), Fraction(1), Fraction(2), Fraction(9, 5))


def fig1_rows() -> list[list[Any]]:
    """Symmetric channel (1, 1, a, a) on a in [0, 3] step 1/60."""
    rows = []
    for i in range(0, 181):
        a = Fraction(i, 60)
        p = ChannelParams(Fraction(1), Fraction(1), a, a)
        star = pi_star(p)
        for label, pi in (("0", Fraction(0)), ("1/3", Fraction(1, 3)), ("2/3", Fraction(2, 3)),
                          ("1", Fraction(1)), ("pi_star", star)):
            half = sum_gdof(p, CoopBudget.half(pi))[0]
            full = sum_gdof(p, CoopBudget.full(pi))[0]
            if half != full:
                raise AssertionError(f"half and full differ at a={a}, pi={pi}")
            rows.append([a, float(a), label, pi, half, float(half), full, float(full)])
    return rows


FIG1_HEADER = ["alpha", "alpha_float", "pi_label", "pi", "half", "half_float", "full", "full_float"]
FIG2_HEADER = ["pi", "pi_float", "half", "half_float", "full", "full_float"]


def fig2_rows() -> list[list[Any]]:
    """Sum-GDoF against pi in [0, 2.5] step 1/100 at (1.2, 1, 2, 1.8)."""
    ch, cf = curve(FIG2_POINT, Mode.HALF), curve(FIG2_POINT, Mode.FULL)
    rows = []
    for i in range(0, 251):
        pi = Fraction(i, 100)
        h, f = ch(pi), cf(pi)
        rows.append([pi, float(pi), h, float(h), f, float(f)])
    return rows


def figure_csv(which: str) -> str:
    if which == "fig1":
        header, rows = FIG1_HEADER, fig1_rows()
    elif which == "fig2":
        header, rows = FIG2_HEADER, fig2_rows()
    else:
        raise UsageError(f"unknown figure {which!r}")
    rows = [[repr(v) if isinstance(v, float) else v for v in r] for r in rows]
    return write_csv(header, rows)


# ---- sweep -----------------------------------------------------------------

def sweep_case(seed: int, regime: Regime, idx: int) -> tuple[ChannelParams, list[CoopBudget]]:
    """Parameter point and budgets for one sweep index, reproducible from (seed, regime, idx)."""
    rng = random.Random(f"{seed}:{regime.value}:{idx}")
    p = sample_params(rng, regime)
    mode = Mode.HALF if idx % 2 == 0 else Mode.FULL
    return p, sample_budgets(rng, p, mode)


def sweep_point(args: tuple[int, str, int, int]) -> list[list[Any]]:
    """One parameter point with five budgets, plus an optional simulation.

    Even indices use the half-duplex model and odd ones full duplex, so both
    are covered evenly at half the cost of running every point twice.
    """
    seed, regime, idx, sim_every = args
    p, budgets = sweep_case(seed, Regime(regime), idx)
    rows = []
    for b in budgets:
        mode = b.mode
        s = synthesize(p, b)
        value = sum_gdof(p, b)[0]
        ok = verify(s).ok and s.total == value
        sim = ""
        if sim_every and idx % sim_every == 0:
            g = grain_for(s)
            if g <= 120:
                sim = "ok" if simulate(s, g=g, check=False).ok else "mismatch"
        rows.append([regime, idx, *map(render, p.as_tuple()), mode.value, render(b.pi),
                     s.case_id, render(value), render(s.total), "ok" if ok else "fail", sim])
    return rows


SWEEP_HEADER = ["regime", "index", "a11", "a22", "a12", "a21", "mode", "pi",
                "case_id", "theorem", "claimed", "verify", "sim"]


def workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_sweep(n: int, seed: int, sim_every: int = 0, n_workers: Optional[int] = None) -> list[list[Any]]:
    jobs = [(seed, r.value, i, sim_every) for r in Regime for i in range(n)]
    n_workers = n_workers or workers()
    if n_workers > 1:
        with ProcessPoolExecutor(n_workers) as ex:
            chunks = list(ex.map(sweep_point, jobs, chunksize=64))
    else:
        chunks = [sweep_point(j) for j in jobs]
    rows = [r for c in chunks for r in c]
    rows.sort(key=lambda r: (r[0], r[1], r[6], Fraction(r[7])))
    return rows


# ---- commands --------------------------------------------------------------

def _budget(ns) -> CoopBudget:
    return CoopBudget(Mode(ns.mode), parse_rational(ns.pi))


def _emit(text: str, out: Optional[str]) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _read_doc(path: str) -> Scheme:
    if path == "-":
        return loads(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def cmd_compute(ns) -> int:
    p = parse_alpha(ns.alpha)
    split = None
    if ns.split:
        toks = ns.split.split(",")
        if len(toks) != 2:
            raise UsageError(f"--split needs two values p01,p02, got {ns.split!r}")
        split = SplitBudget(parse_rational(toks[0]), parse_rational(toks[1]))
    rep = compute_report(p, _budget(ns), split)
    if ns.format == "csv":
        _emit(report_csv(rep), ns.out)
    else:
        _emit(json.dumps(_jsonable(rep), indent=2, ensure_ascii=False) + "\n", ns.out)
    return EXIT_OK


def cmd_synth(ns) -> int:
    s = synthesize(parse_alpha(ns.alpha), _budget(ns))
    _emit(dumps(s), ns.out)
    return EXIT_OK


def cmd_verify(ns) -> int:
    s = _read_doc(ns.doc)
    rep = verify_report(s)
    _emit(json.dumps(_jsonable(rep), indent=2) + "\n", ns.out)
    return EXIT_OK if rep["ok"] else EXIT_VERIFY


def cmd_sim(ns) -> int:
    s = _read_doc(ns.doc)
    try:
        r = simulate(s, g=ns.grain, seed=ns.seed)
    except NotVerifiedError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFY
    rep = {
        "ok": r.ok,
        "grain": r.grain,
        "delivered": {f"Rx{rx}:{m.value}": v for (rx, m), v in sorted(r.delivered.items(), key=lambda t: (t[0][0], t[0][1].value))},
        "expected": {f"Rx{rx}:{m.value}": v for (rx, m), v in sorted(r.expected.items(), key=lambda t: (t[0][0], t[0][1].value))},
        "collisions": [[tx, a.value, b.value, t] for tx, a, b, t in r.collisions],
    }
    _emit(json.dumps(rep, indent=2) + "\n", ns.out)
    return EXIT_OK if r.ok else EXIT_SIM


def cmd_figures(ns) -> int:
    text = figure_csv(ns.which)
    try:
        _emit(text, ns.out)
    except OSError as e:
        raise UsageError(f"cannot write {ns.out}: {e.strerror}") from None
    return EXIT_OK


def cmd_sweep(ns) -> int:
    t0 = time.perf_counter()
    rows = run_sweep(ns.n, ns.seed, ns.sim_every, ns.workers)
    _emit(write_csv(SWEEP_HEADER, rows), ns.out)
    bad = sum(r[11] != "ok" for r in rows)
    mism = sum(r[12] == "mismatch" for r in rows)
    print(f"{len(rows)} cases, {bad} failed, {mism} simulation mismatches, "
          f"{time.perf_counter() - t0:.1f}s", file=sys.stderr)
    if bad:
        return EXIT_VERIFY
    return EXIT_SIM if mism else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coopgdof", description="Sum-GDoF of the two-user interference channel with transmitter cooperation.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def point(sp):
        sp.add_argument("--alpha", required=True, help="a11,a22,a12,a21 as n/d or decimals")
        sp.add_argument("--pi", required=True, help="cooperation budget")
        sp.add_argument("--mode", choices=[m.value for m in Mode], default="half")
        sp.add_argument("--out", default=None)

    sp = sub.add_parser("compute", help="bounds, sum-GDoF and saturation thresholds")
    point(sp)
    sp.add_argument("--split", default=None, help="p01,p02 for the general split-budget bound")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("synth", help="emit the achievable scheme as a JSON document")
    point(sp)
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("verify", help="check a scheme document")
    sp.add_argument("doc", help="path or - for stdin")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sim", help="run a scheme document on the deterministic channel")
    sp.add_argument("doc", help="path or - for stdin")
    sp.add_argument("--grain", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_sim)

    sp = sub.add_parser("figures", help="CSV data for the sum-GDoF curves")
    sp.add_argument("--which", choices=["fig1", "fig2"], required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_figures)

    sp = sub.add_parser("sweep", help="random synthesize/verify sweep as CSV")
    sp.add_argument("--n", type=int, default=100, help="points per regime")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--sim-every", type=int, default=0, help="simulate every k-th point (0 = never)")
    sp.add_argument("--workers", type=int, default=None, help=f"defaults to ${WORKERS_ENV} or 1")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_sweep)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return ns.func(ns)
    except (UsageError, SchemaError, StructuralError, GridError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
