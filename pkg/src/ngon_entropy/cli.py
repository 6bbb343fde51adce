"""Command-line front end.

Exit codes: 0 success, 1 runtime or verdict error, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

from . import distinguish as dist
from . import entropy as ent
from .theory import (
    Measurement,
    PolygonSpec,
    StateVector,
    TheoryError,
    center,
    edge_midpoint,
    pure_effects,
    pure_state,
    pure_states,
    radius,
    unit_effect,
)

FIG4_HEADER = ["n", "alpha", "eq5_nats", "eq6_nats", "gap_nats", "branch"]


class UsageError(Exception):
    pass


def fmt(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    s = format(x, ".12g")
    return "0" if s == "-0" else s


def parse_n(text: str) -> PolygonSpec:
    try:
        return PolygonSpec.parse(text)
    except TheoryError as exc:
        raise UsageError(str(exc)) from None


def parse_n_range(text: str) -> list[PolygonSpec]:
    """``"3..32,inf"`` -> specs for 3, 4, ..., 32 and the disk."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ".." in item:
            lo, hi = item.split("..", 1)
            try:
                lo, hi = int(lo), int(hi)
            except ValueError:
                raise UsageError(f"bad range {item!r}") from None
            if hi < lo:
                raise UsageError(f"empty range {item!r}")
            out.extend(parse_n(str(k)) for k in range(lo, hi + 1))
        else:
            out.append(parse_n(item))
    if not out:
        raise UsageError(f"empty n-range {text!r}")
    return out


_ANGLE = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


def parse_angle(text: str) -> float:
    """Radians, written as a float or as ``[k][*]pi[/d]`` (e.g. ``pi``, ``3pi/4``)."""
    m = _ANGLE.match(text)
    if m:
        k = m.group(1)
        k = 1.0 if k in ("", "+") else -1.0 if k == "-" else float(k)
        d = float(m.group(2)) if m.group(2) else 1.0
        return k * math.pi / d
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None


def parse_state(text: str, spec: PolygonSpec, i: int = 0) -> StateVector:
    """Parse JSON ``{"n": .., "coords": [..]}`` or a shorthand.

    Shorthands: ``pure:k`` (``pure:<angle>`` on the disk), ``angle:<angle>``,
    ``center``, ``edge-mid:k`` and ``witness:P|Q|R|A`` (base index ``i``).
    """
    text = text.strip()
    try:
        if text.startswith("{"):
            try:
                d = json.loads(text)
            except json.JSONDecodeError as exc:
                raise UsageError(f"malformed state JSON: {exc}") from None
            s = StateVector.from_dict(d)
            if s.theory != spec:
                raise UsageError(f"state is for the {s.theory}-gon, command is for the {spec}-gon")
            return s
        kind, _, arg = text.partition(":")
        kind = kind.lower()
        if kind == "center":
            return center(spec)
        if kind in ("pure", "angle"):
            if spec.infinite:
                return pure_state(spec, theta=parse_angle(arg))
            if kind == "angle":
                raise UsageError("angle: states only exist for n=inf")
            return pure_state(spec, _int(arg))
        if kind == "edge-mid":
            return edge_midpoint(spec, _int(arg))
        if kind == "witness":
            name = arg.upper()
            if name == "A":
                return ent.construct_omega_A(spec, i)
            builders = {"P": ent.construct_omega_P, "Q": ent.construct_omega_Q, "R": ent.construct_omega_R}
            if name not in builders:
                raise UsageError(f"unknown witness {arg!r}; use P, Q, R or A")
            return builders[name](spec, i).state
    except TheoryError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"cannot parse state {text!r}")


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"expected an integer index, got {s!r}") from None


def _coords(v) -> str:
    # trig round-off such as cos(pi/2) ~ 6e-17 is shown as 0
    return " ".join(fmt(0.0 if abs(c) < 1e-14 else c) for c in v.coords)


def _effect_labels(spec: PolygonSpec) -> list[str]:
    labels = ["0", "u"] + [f"e_{k}" for k in range(spec.n)]
    if spec.odd:
        labels += [f"ebar_{k}" for k in range(spec.n)]
    return labels


def cmd_theory(args, out) -> int:
    spec = parse_n(args.n)
    if spec.infinite:
        payload = {
            "n": "inf",
            "radius": 1.0,
            "states": "omega_theta = (cos t, sin t, 1)",
            "effects": "0, u = (0, 0, 1), e_theta = (cos t, sin t, 1)/2",
        }
        if args.format == "json":
            print(json.dumps(payload), file=out)
        else:
            for k, v in payload.items():
                print(f"{k}: {v}", file=out)
        return 0
    states = pure_states(spec)
    effects = pure_effects(spec)
    labels = _effect_labels(spec)
    if args.format == "json":
        print(json.dumps({
            "n": spec.n,
            "radius": radius(spec),
            "states": [s.to_dict()["coords"] for s in states],
            "effects": {lab: e.to_dict()["coords"] for lab, e in zip(labels, effects)},
        }), file=out)
        return 0
    print(f"# {spec.n}-gon theory, r_n = {fmt(radius(spec))}", file=out)
    print(f"# {len(states)} pure states", file=out)
    for k, s in enumerate(states):
        print(f"omega_{k} {_coords(s)}", file=out)
    print(f"# {len(effects)} extreme effects", file=out)
    for lab, e in zip(labels, effects):
        print(f"{lab} {_coords(e)}", file=out)
    return 0


def _read_states(args, spec) -> list[StateVector]:
    items = list(args.states)
    if args.states_file:
        try:
            with open(args.states_file) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read {args.states_file}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed JSON in {args.states_file}: {exc}") from None
        if isinstance(data, dict):
            data = [data]
        items += [json.dumps(d) if isinstance(d, dict) else str(d) for d in data]
    if not items:
        raise UsageError("no states given")
    return [parse_state(t, spec, args.i) for t in items]


def cmd_distinguish(args, out) -> int:
    spec = parse_n(args.n)
    states = _read_states(args, spec)
    witness = None
    if len(states) == 2:
        try:
            witness = dist.closed_form_pair(spec, *states)
        except TheoryError as exc:
            raise UsageError(str(exc)) from None
        if not spec.infinite:
            lp_witness = dist.lp_distinguishable(spec, states)
            if (lp_witness is None) != (witness is None):
                print("error: closed form and LP disagree", file=sys.stderr)
                return 1
    elif len(states) == 1:
        witness = dist.Witness(Measurement((unit_effect(spec),)), (0,))
    elif spec.infinite:
        witness = None
    else:
        if len(states) > spec.n:
            raise UsageError(f"at most {spec.n} states can be distinguished")
        witness = dist.lp_distinguishable(spec, states)

    if args.format == "json":
        payload = {"n": spec.label(), "distinguishable": witness is not None}
        if witness is not None:
            payload["witness"] = [witness.effect_for(j).to_dict()["coords"] for j in range(len(states))]
        print(json.dumps(payload), file=out)
        return 0
    if witness is None:
        print("not distinguishable", file=out)
        return 0
    witness.check(states)
    print("distinguishable", file=out)
    for j in range(len(states)):
        print(f"state {j} -> effect {_coords(witness.effect_for(j))}", file=out)
    return 0


def cmd_entropy(args, out) -> int:
    spec = parse_n(args.n)
    state = parse_state(args.state, spec, args.i)
    if spec.infinite:
        value = ent.entropy_disk(state)
    elif spec.n == 3:
        value = ent.entropy_trit(state)
    else:
        print(f"error: no consistent entropy of mixing on the {spec.n}-gon theory (run `verify --n {spec.n}`)",
              file=sys.stderr)
        return 1
    print(fmt(value), file=out)
    return 0


def _specs(args) -> list[PolygonSpec]:
    specs = [parse_n(t) for t in (args.n or [])]
    if args.n_range:
        specs += parse_n_range(args.n_range)
    if not specs:
        raise UsageError("give --n or --n-range")
    return specs


def cmd_verify(args, out) -> int:
    reports = [ent.verify_theorem(s, args.i) for s in _specs(args)]
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports]), file=out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "verdict", "gap_nats", "values_nats"])
        for r in reports:
            w.writerow([r.spec.label(), r.verdict.value, fmt(r.gap), ";".join(fmt(v) for _, v in r.values)])
    else:
        for r in reports:
            vals = ", ".join(f"{d} = {fmt(v)}" for d, v in r.values)
            print(f"n={r.spec.label():<4} {r.verdict.value:<12} gap={fmt(r.gap):<20} {vals}", file=out)
    return 0


def fig4_rows(max_n: int, min_n: int = 5):
    for n in range(min_n, max_n + 1):
        if n % 2 == 0:
            continue
        alpha = math.sin(math.pi / (2 * n))
        first = ent.closed_form_S_A_first(n)
        second = ent.closed_form_S_A_second(n)
        yield [str(n), fmt(alpha), fmt(first), fmt(second), fmt(first - second),
               "3mod4" if n % 4 == 3 else "1mod4"]


def cmd_fig4(args, out) -> int:
    if args.min_n < 3 or args.max_n < args.min_n:
        raise UsageError(f"need 3 <= min-n <= max-n, got {args.min_n}..{args.max_n}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIG4_HEADER)
    w.writerows(fig4_rows(args.max_n, args.min_n))
    if args.out in (None, "-"):
        out.write(buf.getvalue())
        return 0
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_max_size(args, out) -> int:
    spec = parse_n(args.n)
    print(dist.max_distinguishable_size(spec, args.bound), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ngon-entropy", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("theory", help="list pure states and extreme effects")
    t.add_argument("--n", required=True)
    t.add_argument("--format", choices=["table", "json"], default="table")
    t.set_defaults(func=cmd_theory)

    d = sub.add_parser("distinguish", help="test perfect distinguishability")
    d.add_argument("--n", required=True)
    d.add_argument("states", nargs="*", help="JSON states or shorthands (pure:k, center, edge-mid:k, witness:P)")
    d.add_argument("--states-file")
    d.add_argument("--i", type=int, default=0, help="base index for witness:* shorthands")
    d.add_argument("--format", choices=["table", "json"], default="table")
    d.set_defaults(func=cmd_distinguish)

    e = sub.add_parser("entropy", help="entropy of mixing of a state (n=3 or inf)")
    e.add_argument("--n", required=True)
    e.add_argument("state")
    e.add_argument("--i", type=int, default=0)
    e.set_defaults(func=cmd_entropy)

    v = sub.add_parser("verify", help="consistency verdict per n")
    v.add_argument("--n", action="append")
    v.add_argument("--n-range")
    v.add_argument("--i", type=int, default=0)
    v.add_argument("--format", choices=["table", "json", "csv"], default="table")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fig4", help="CSV of the two S(omega_A) values for odd n")
    f.add_argument("--max-n", type=int, required=True)
    f.add_argument("--min-n", type=int, default=5)
    f.add_argument("--out")
    f.set_defaults(func=cmd_fig4)

    m = sub.add_parser("max-size", help="largest perfectly distinguishable set of pure states")
    m.add_argument("--n", required=True)
    m.add_argument("--bound", type=int, default=32)
    m.set_defaults(func=cmd_max_size)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError, ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
