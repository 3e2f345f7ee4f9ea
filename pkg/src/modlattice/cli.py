"""Command line: classify, lattice, cl-hilbert, laws run, witness zx.

Reports are canonical JSON (sorted keys, two-space indent, integers beyond
the 53-bit safe range as decimal strings) so that identical jobs produce
byte-identical output.  Exit codes: 0 ok, 1 law failure, 2 parse error,
3 unsupported input, 4 bounds exceeded, 5 internal error.
"""

import argparse
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass

from . import __version__
from . import classify as C
from . import euclid as E
from . import finmod, laws, zx_witness
from .domains import parse_domain
from .errors import BoundExceeded, ModLatticeError, ParseError
from .rings import parse_ring

SAFE_INT = 2**53


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


@dataclass(frozen=True)
class JobSpec:
    command: str
    ring: str = None
    domain: str = None
    module: dict = None
    submodule: dict = None
    max_module: int = None
    max_lattice: int = None
    seed: int = None
    samples: int = None
    p: int = None
    law: str = None
    all: bool = False
    out: str = None
    format: str = "json"


def _non_negative(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def _integer(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


def build_parser():
    parser = _Parser(prog="modlattice", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"modlattice {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--ring", help="finite ring, e.g. Z/6 or 'Z/2 x GF(2)[x]/[1,1,1]'")
        src.add_argument("--domain", help="Z, GF(p)[x] or Zloc(p)")
        p.add_argument("--module", required=True, help="module JSON, @file or - for stdin")
        p.add_argument("--max-module", type=_non_negative)
        p.add_argument("--max-lattice", type=_non_negative)
        p.add_argument("--out")

    p = sub.add_parser("classify", help="classify a submodule")
    common(p)
    p.add_argument("--submodule", required=True, help="submodule JSON {\"generators\": [...]}")
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("lattice", help="enumerate the submodule lattice")
    common(p)
    p.add_argument("--format", choices=["json", "dot"], default="json")

    p = sub.add_parser("cl-hilbert", help="decide the classical Hilbert property")
    common(p)
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("laws", help="run the law suite")
    lsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    run = lsub.add_parser("run")
    which = run.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true")
    which.add_argument("--law")
    run.add_argument("--seed", type=_integer, required=True)
    run.add_argument("--ring")
    run.add_argument("--max-module", type=_integer)
    run.add_argument("--max-lattice", type=_non_negative)
    run.add_argument("--out")
    run.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("witness", help="arithmetic witnesses")
    wsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    zx = wsub.add_parser("zx")
    zx.add_argument("--p", type=_integer, required=True)
    zx.add_argument("--samples", type=_non_negative, required=True)
    zx.add_argument("--seed", type=_integer, required=True)
    zx.add_argument("--out")
    zx.add_argument("--format", choices=["json"], default="json")
    return parser


def _load_json(text, what, stdin):
    if text is None:
        return None
    if text == "-":
        text = stdin.read()
    elif text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {what} file: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what} is not valid JSON: {exc.msg} at position {exc.pos}") from None
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be a JSON object")
    return obj


def parse_job(argv, stdin=None):
    """Validated JobSpec from argv; ParseError or UnsupportedRing otherwise."""
    stdin = sys.stdin if stdin is None else stdin
    ns = build_parser().parse_args(list(argv))
    cmd = ns.command
    if cmd == "laws":
        job = JobSpec(
            "laws",
            ring=ns.ring,
            max_module=ns.max_module,
            max_lattice=ns.max_lattice,
            seed=ns.seed,
            law=ns.law,
            all=ns.all,
            out=ns.out,
        )
        if job.law is not None and job.law not in laws.REGISTRY:
            raise ParseError(f"unknown law {job.law!r}")
        return job
    if cmd == "witness":
        return JobSpec("witness", seed=ns.seed, samples=ns.samples, p=ns.p, out=ns.out)
    job = JobSpec(
        cmd,
        ring=ns.ring,
        domain=ns.domain,
        module=_load_json(ns.module, "--module", stdin),
        submodule=_load_json(getattr(ns, "submodule", None), "--submodule", stdin),
        max_module=ns.max_module,
        max_lattice=ns.max_lattice,
        out=ns.out,
        format=ns.format,
    )
    if job.ring is not None:
        parse_ring(job.ring)
    else:
        parse_domain(job.domain)
        if cmd == "lattice":
            raise ParseError("lattice needs a finite --ring")
    return job


def render_job(job):
    """argv that parses back to ``job``."""
    if job.command == "laws":
        argv = ["laws", "run"]
        argv += ["--all"] if job.all else ["--law", job.law]
        argv += ["--seed", str(job.seed)]
        for flag, value in (("--ring", job.ring), ("--max-module", job.max_module), ("--max-lattice", job.max_lattice), ("--out", job.out)):
            if value is not None:
                argv += [flag, str(value)]
        return argv
    if job.command == "witness":
        argv = ["witness", "zx", "--p", str(job.p), "--samples", str(job.samples), "--seed", str(job.seed)]
        return argv + (["--out", job.out] if job.out is not None else [])
    argv = [job.command]
    argv += ["--ring", job.ring] if job.ring is not None else ["--domain", job.domain]
    argv += ["--module", json.dumps(job.module, sort_keys=True)]
    if job.submodule is not None:
        argv += ["--submodule", json.dumps(job.submodule, sort_keys=True)]
    for flag, value in (("--max-module", job.max_module), ("--max-lattice", job.max_lattice), ("--out", job.out)):
        if value is not None:
            argv += [flag, str(value)]
    if job.format != "json":
        argv += ["--format", job.format]
    return argv


# ----------------------------------------------------------------- output


def _canonical(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= SAFE_INT else obj
    if isinstance(obj, dict):
        return {str(k): _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    return str(obj)


def dumps(obj):
    return json.dumps(_canonical(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".modlattice-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _echo(job):
    names = {"max_module": "maxModule", "max_lattice": "maxLattice"}
    out = {names.get(k, k): v for k, v in asdict(job).items() if v is not None and k not in ("out", "format")}
    if job.command not in ("laws",):
        out.pop("all", None)
    return out


# ---------------------------------------------------------------- finite


def _finite_module(job):
    R = parse_ring(job.ring)
    M = finmod.module_from_json(job.module, ring=R)
    if job.max_module is not None and M.size > job.max_module:
        raise BoundExceeded(f"module has {M.size} elements, above --max-module {job.max_module}")
    return M


def _lattice(M, job):
    kwargs = {}
    if job.max_lattice is not None:
        kwargs["max_count"] = job.max_lattice
    if job.max_module is not None:
        kwargs["max_size"] = job.max_module
    return finmod.all_submodules(M, **kwargs)


def _covers(M, subs):
    """Covering pairs (i, j): subs[j] covers subs[i].

    A cover of N has the form N + Rm, so the covers are the minimal members
    of {N + Rm : m not in N}.
    """
    index = {N.mask: i for i, N in enumerate(subs)}
    edges = []
    for i, N in enumerate(subs):
        members = N.elements
        joins = set()
        for m in range(M.size):
            if not (N.mask >> m) & 1:
                mask, _ = finmod.close_into(M, N.mask, members, m)
                joins.add(mask)
        ordered = sorted(joins, key=lambda x: bin(x).count("1"))
        minimal = []
        for mask in ordered:
            if not any(k & ~mask == 0 for k in minimal):
                minimal.append(mask)
        edges.extend((i, index[mask]) for mask in minimal)
    return sorted(edges)


def _flags(M, P):
    if not P.is_proper:
        return ""
    flags = ""
    if C.is_maximal_sub(M, P):
        flags += "M"
    if C.is_prime_sub(M, P):
        flags += "P"
    if C.is_classical_prime(M, P):
        flags += "C"
    if C.is_intersection_of_maximals(M, P):
        flags += "R"
    return flags


def lattice_report(M, subs):
    nodes = []
    for i, N in enumerate(subs):
        nodes.append({"id": i, "size": N.size, "flags": _flags(M, N), "generators": [M.encode(g) for g in N.generators]})
    return {"moduleSize": M.size, "count": len(subs), "nodes": nodes, "edges": [list(e) for e in _covers(M, subs)]}


def export_dot(report):
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box];"]
    for node in report["nodes"]:
        label = f"#{node['id']} |{node['size']}|"
        if node["flags"]:
            label += f" {node['flags']}"
        lines.append(f'  n{node["id"]} [label="{label}"];')
    for a, b in report["edges"]:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _run_classify(job):
    if job.ring is not None:
        M = _finite_module(job)
        P = finmod.submodule_from_json(M, job.submodule)
        return C.classify(M, P).to_json()
    D = parse_domain(job.domain)
    M = E.module_from_json(job.module, domain=D)
    P = E.submodule_from_json(M, job.submodule)
    return E.classify_fg(M, P)


def _run_cl_hilbert(job):
    if job.ring is not None:
        M = _finite_module(job)
        _lattice(M, job)
        W = C.cl_hilbert_witness(M)
        out = {"verdict": W is None, "tag": "Exhaustive", "classicalPrimes": len(C.classical_primes(M))}
        if W is not None:
            out["witness"] = {"generators": [M.encode(g) for g in W.generators]}
            out["radical"] = {"elements": C.meet_of_maximals_above(M, W).encode()}
        return out
    D = parse_domain(job.domain)
    M = E.module_from_json(job.module, domain=D)
    return E.is_cl_hilbert_fg(M).to_json(D)


def execute(job):
    """Run a job; returns (report dict or DOT text, exit code)."""
    if job.command == "classify":
        return {"toolVersion": __version__, "input": _echo(job), "result": _run_classify(job)}, 0
    if job.command == "cl-hilbert":
        return {"toolVersion": __version__, "input": _echo(job), "result": _run_cl_hilbert(job)}, 0
    if job.command == "lattice":
        M = _finite_module(job)
        report = lattice_report(M, _lattice(M, job))
        if job.format == "dot":
            return export_dot(report), 0
        return {"toolVersion": __version__, "input": _echo(job), "result": report}, 0
    if job.command == "laws":
        cfg = laws.LawConfig()
        overrides = {}
        if job.max_module is not None:
            overrides["max_module"] = job.max_module
        if job.max_lattice is not None:
            overrides["max_lattice"] = job.max_lattice
        if job.ring is not None:
            overrides["ring"] = job.ring
        cfg = laws.LawConfig(**{**asdict(cfg), **overrides})
        ids = laws.LAW_IDS if job.all else (job.law,)
        reports = [laws.run_law(i, cfg, job.seed) for i in ids]
        status = laws.exit_status(reports)
        result = {"allPassed": status == 0, "reports": [r.to_json() for r in reports]}
        return {"toolVersion": __version__, "input": _echo(job), "result": result}, status
    if job.command == "witness":
        result = zx_witness.witness_report(job.p, job.samples, job.seed)
        ok = result["notPrime"]["verified"] and result["radicalObstruction"]["verified"]
        ok = ok and result["falsifier"]["kind"] == "NoCounterexample"
        return {"toolVersion": __version__, "input": _echo(job), "result": result}, 0 if ok else 1
    raise ParseError(f"unknown command {job.command!r}")


def main(argv=None, stdin=None, stdout=None, stderr=None):
    argv = sys.argv[1:] if argv is None else argv
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        job = parse_job(argv, stdin)
        payload, status = execute(job)
        text = payload if isinstance(payload, str) else dumps(payload)
        if job.out:
            write_atomic(job.out, text)
        else:
            stdout.write(text)
        return status
    except ModLatticeError as exc:
        stderr.write(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return exc.exit_code
    except SystemExit as exc:  # --help and --version
        return exc.code if isinstance(exc.code, int) else 0
    except Exception as exc:
        stderr.write(dumps({"error": "InternalError", "message": f"{type(exc).__name__}: {exc}"}))
        return 5


if __name__ == "__main__":
    sys.exit(main())
