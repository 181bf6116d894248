"""Command-line front end.

Reports are JSON by default (``--format csv`` or ``text`` for the others) and
are fully determined by the arguments and ``--seed``.  Exit codes: 0 success,
1 a corpus verdict differs from the golden file, 2 usage error, 3 an error
raised by the algebra (reported with its machine-readable code).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import multiprocessing
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .budget import Budget
from .errors import CharpError

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    code = "usage"


@dataclass
class RunConfig:
    command: str
    tower_file: Optional[str] = None
    place_file: Optional[str] = None
    fixture: Optional[str] = None
    degree: Optional[int] = None
    height: Optional[int] = None
    precision: Optional[int] = None
    budget: Optional[int] = None
    format: str = "json"
    seed: int = 0
    workers: int = 1
    options: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("degree", "height", "precision", "budget", "workers"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise UsageError(f"--{name} must be positive")

    def make_budget(self) -> Budget:
        return Budget(self.budget)

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        known = {"command", "tower", "place", "fixture", "degree", "height", "precision", "budget", "format",
                 "seed", "workers", "action"}
        command = ns.command if ns.command != "tower" else "tower check"
        opts = {k: v for k, v in vars(ns).items() if k not in known}
        return cls(command, getattr(ns, "tower", None), getattr(ns, "place", None), getattr(ns, "fixture", None),
                   getattr(ns, "degree", None), getattr(ns, "height", None), getattr(ns, "precision", None),
                   ns.budget, ns.format, ns.seed, ns.workers, opts)


# ---------------------------------------------------------------------------
# input documents


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _validate(doc, schema_name: str, what: str):
    import jsonschema

    try:
        jsonschema.validate(doc, load_schema(schema_name))
    except jsonschema.ValidationError as exc:
        raise UsageError(f"{what} does not match the {schema_name} schema: {exc.message}") from None


def load_tower(path: str):
    from .exactfield.presentation import FieldPresentation

    doc = _load_json(path)
    _validate(doc, "tower", path)
    return FieldPresentation.from_json(doc)


def place_from_doc(doc, budget: Budget):
    from .exactfield.presentation import FieldPresentation
    from .fixtures import FIXTURES, fixture
    from .valuation import place_from_prime

    if "fixture" in doc:
        if doc["fixture"] not in FIXTURES:
            raise UsageError(f"unknown fixture {doc['fixture']!r}")
        return fixture(doc["fixture"])
    A = FieldPresentation.from_json(doc["algebra"])
    return place_from_prime(A, doc["prime"], constants=tuple(doc.get("constants", ())), label=doc.get("label"),
                            budget=budget)


def resolve_place(cfg: RunConfig, budget: Budget, which: Optional[str] = None):
    """The place named by --fixture/--place, or by a NAME-or-PATH argument."""
    from .fixtures import FIXTURES, fixture

    if which is not None:
        if which in FIXTURES:
            return fixture(which)
        doc = _load_json(which)
        _validate(doc, "place", which)
        return place_from_doc(doc, budget)
    if cfg.fixture:
        if cfg.fixture not in FIXTURES:
            raise UsageError(f"unknown fixture {cfg.fixture!r}; choose from {', '.join(FIXTURES)}")
        return fixture(cfg.fixture)
    if cfg.place_file:
        doc = _load_json(cfg.place_file)
        _validate(doc, "place", cfg.place_file)
        return place_from_doc(doc, budget)
    raise UsageError("give a place with --fixture NAME or --place FILE")


def _names(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    return [x.strip() for x in text.split(",") if x.strip()]


def _require(cfg: RunConfig, *names):
    for n in names:
        value = getattr(cfg, n, None) if hasattr(cfg, n) else cfg.options.get(n)
        if value is None:
            raise UsageError(f"--{n.replace('_', '-')} is required for {cfg.command}")


# ---------------------------------------------------------------------------
# parallel scans
#
# Workers are forked after the place list is built, so only indices cross the
# process boundary; results come back in index order.

_SCAN: Dict[str, object] = {}


def _scan_one(i: int):
    fn = _SCAN["fn"]
    return fn(_SCAN["places"][i])


def parallel_map(fn, places: Sequence, workers: int) -> list:
    if workers <= 1 or len(places) < 2:
        return [fn(P) for P in places]
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        return [fn(P) for P in places]
    _SCAN["fn"], _SCAN["places"] = fn, places
    try:
        with ctx.Pool(workers) as pool:
            return pool.map(_scan_one, range(len(places)), chunksize=max(1, len(places) // (4 * workers)))
    finally:
        _SCAN.clear()


# ---------------------------------------------------------------------------
# commands


def cmd_tower_check(cfg: RunConfig) -> dict:
    from .differential import p_basis

    _require(cfg, "tower_file")
    budget = cfg.make_budget()
    L = load_tower(cfg.tower_file)
    certificate = L.validate(budget).certify(budget)
    return {
        "command": "tower check",
        "field": L.to_json(),
        "certificate": certificate,
        "finite": L.is_finite(budget),
        "imperfect_exponent": L.imperfect_exponent,
        "p_basis": [str(x) for x in p_basis(L, budget)],
    }


def cmd_smooth(cfg: RunConfig) -> dict:
    from .smoothness import conormal_dimensions, formally_smooth_over

    budget = cfg.make_budget()
    P = resolve_place(cfg, budget)
    sub = _names(cfg.options.get("subfield"))
    basis = _names(cfg.options.get("basis"))
    v = formally_smooth_over(P, sub, basis, budget)
    fibre_dim, omega_dim = conormal_dimensions(P, budget)
    doc = {"command": "smooth", **v.to_json(), "recheck": v.recheck(budget),
           "cotangent_dimension": fibre_dim, "residue_differentials_dimension": omega_dim}
    return doc


def cmd_urt(cfg: RunConfig) -> dict:
    from .logic.ast import print_formula
    from .smoothness import ur_sentence, ur_t_holds

    _require(cfg, "t")
    budget = cfg.make_budget()
    P = resolve_place(cfg, budget)
    t = cfg.options["t"]
    return {"command": "urt", "place": P.label, "t": t, "ur_t": ur_t_holds(P, t, budget),
            "sentence": print_formula(ur_sentence(t, P.p))}


def cmd_insep(cfg: RunConfig) -> dict:
    from .differential import inseparability_degree

    _require(cfg, "tower_file", "over")
    budget = cfg.make_budget()
    L = load_tower(cfg.tower_file)
    L.validate(budget)
    over = cfg.options["over"]
    ref = int(over) if over.lstrip("-").isdigit() else _names(over)
    names = list(L.layer_names(ref))
    d = inseparability_degree(L, names, budget)
    return {"command": "insep", "field": L.to_json(), "over": names, "inseparability_degree": d,
            "separable": d == 0, "at_most_one": d <= 1}


def _enumerate(cfg: RunConfig, L, budget: Budget):
    from .valuation import enumerate_places, enumerate_places_xa

    if cfg.height is not None:
        return enumerate_places_xa(L, cfg.height, budget)
    _require(cfg, "degree")
    return enumerate_places(L, cfg.degree, budget)


def cmd_places(cfg: RunConfig) -> dict:
    _require(cfg, "tower_file")
    budget = cfg.make_budget()
    L = load_tower(cfg.tower_file)
    L.validate(budget)
    ps = _enumerate(cfg, L, budget)
    return {"command": "places", "field": L.to_json(), "bound": ps.degree_bound, "count": len(ps),
            "records": ps.to_json(), "unresolved": list(ps.unresolved)}


class _Exceptional:
    def __init__(self, t, limit):
        self.t, self.limit = t, limit

    def __call__(self, P):
        from .smoothness import differential_status
        from .valuation import exceptional_places

        budget = Budget(self.limit)
        hit = exceptional_places([P], self.t, budget)
        if hit:
            return {"place": P.label, "degree": P.residue_degree, "exceptional": True, "reasons": hit[0][1]}
        status = differential_status(P, self.t, budget)
        return {"place": P.label, "degree": P.residue_degree, "exceptional": False, "dt": status}


def cmd_exceptional(cfg: RunConfig) -> dict:
    _require(cfg, "tower_file", "t", "degree")
    budget = cfg.make_budget()
    L = load_tower(cfg.tower_file)
    L.validate(budget)
    ps = _enumerate(cfg, L, budget)
    records = parallel_map(_Exceptional(cfg.options["t"], cfg.budget), list(ps), cfg.workers)
    exceptional = [r for r in records if r["exceptional"]]
    failures = [r["place"] for r in records if not r["exceptional"] and r["dt"] != "nonzero"]
    return {"command": "exceptional", "field": L.to_json(), "t": cfg.options["t"], "bound": cfg.degree,
            "exceptional": [{"place": r["place"], "reasons": r["reasons"]} for r in exceptional],
            "non_exceptional": len(records) - len(exceptional), "assertion_failures": failures,
            "records": records}


class _Scan:
    def __init__(self, h, limit):
        self.h, self.limit = h, limit

    def __call__(self, P):
        from .smoothness import differential_status

        return {"place": P.label, "degree": P.residue_degree,
                "status": differential_status(P, self.h, Budget(self.limit))}


def cmd_scan_smooth(cfg: RunConfig) -> dict:
    _require(cfg, "tower_file", "h", "degree")
    budget = cfg.make_budget()
    L = load_tower(cfg.tower_file)
    L.validate(budget)
    ps = _enumerate(cfg, L, budget)
    records = parallel_map(_Scan(cfg.options["h"], cfg.budget), list(ps), cfg.workers)
    return {"command": "scan-smooth", "field": L.to_json(), "h": cfg.options["h"], "bound": cfg.degree,
            "scanned": len(records), "failures": [r["place"] for r in records if r["status"] == "vanishes"],
            "poles": [r["place"] for r in records if r["status"] == "pole"], "records": records}


def cmd_translate(cfg: RunConfig) -> dict:
    from .logic.ast import print_formula
    from .logic.parser import parse
    from .logic.rewrite import eliminate_valuation, parameter_name, residue_interpretation, to_nnf

    _require(cfg, "formula", "mode")
    field_ = load_tower(cfg.tower_file) if cfg.tower_file else None
    f = parse(cfg.options["formula"], field_)
    doc = {"command": "translate", "mode": cfg.options["mode"], "input": print_formula(f)}
    if cfg.options["mode"] == "valuation":
        g = to_nnf(f)
        X = cfg.options.get("parameter") or parameter_name(g)
        doc["parameter"] = X
        doc["output"] = print_formula(eliminate_valuation(g, X))
    else:
        doc["output"] = print_formula(residue_interpretation(f))
    return doc


def _model(cfg: RunConfig, budget: Budget):
    from .exactfield.poly import is_prime
    from .logic.evaluate import FiniteFieldModel
    from .series import complete_at

    spec = cfg.options.get("field")
    if spec is not None:
        if spec.isdigit():
            if not is_prime(int(spec)):
                raise UsageError(f"--field {spec} is not a prime")
            return FiniteFieldModel.prime(int(spec)), None
        L = load_tower(spec)
        L.validate(budget)
        if not L.is_finite(budget):
            raise UsageError(f"{spec} does not present a finite field")
        return FiniteFieldModel.of(L), L
    P = resolve_place(cfg, budget)
    N = cfg.precision or 8
    return complete_at(P, N, budget), P.field


def cmd_eval(cfg: RunConfig) -> dict:
    from .logic.ast import print_formula
    from .logic.evaluate import DEFAULT_STEPS, eval_bounded
    from .logic.parser import parse

    _require(cfg, "formula")
    budget = cfg.make_budget()
    model, field_ = _model(cfg, budget)
    f = parse(cfg.options["formula"], field_)
    v = eval_bounded(f, model, Budget(cfg.budget or DEFAULT_STEPS))
    return {"command": "eval", "formula": print_formula(f), "model": model.describe(), **v.to_json(model.show)}


def _parse_map(text: str) -> Dict[str, str]:
    text = text.strip()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--map is not valid JSON: {exc}") from None
        return {str(k): str(v) for k, v in doc.items()}
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"--map entry {part!r} is not of the form name=expression")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_embed(cfg: RunConfig) -> dict:
    from .series import build_embedding, complete_at

    _require(cfg, "source", "target", "map")
    budget = cfg.make_budget()
    N = cfg.precision or 4
    R = complete_at(resolve_place(cfg, budget, cfg.options["source"]), N, budget)
    S = complete_at(resolve_place(cfg, budget, cfg.options["target"]), N, budget)
    emb = build_embedding(R, S, _parse_map(cfg.options["map"]), N, budget=budget, seed=cfg.seed)
    images = {k: S.show(emb(v)) for k, v in R.named.items() if R.in_O(v)}
    return {"command": "embed", "source": R.place.label, "target": S.place.label, "seed": cfg.seed,
            **emb.to_json(), "images": images}


# ---------------------------------------------------------------------------
# corpus


def corpus_report(seed: int = 0) -> dict:
    from .fixtures import EMBEDDING_PAIRS, fixture
    from .logic.ast import print_formula
    from .logic.evaluate import eval_bounded
    from .logic.parser import parse
    from .series import adhoc_refute, build_embedding, complete_at
    from .smoothness import conormal_check, formally_smooth_over, proot_adjunction_is_dvr, scan_smooth, ur_sentence, ur_t_holds
    from .exactfield.presentation import FieldPresentation
    from .valuation import enumerate_places, exceptional_places

    rows = []
    models = {}
    for name in ("K1", "K2", "K3"):
        P = fixture(name)
        v = formally_smooth_over(P)
        M = complete_at(P, 8)
        models[name] = M
        ref = adhoc_refute(M, ["t"], search_budget=200)
        row = {
            "place": name,
            "formally_smooth": v.verdict,
            "ur_t": ur_t_holds(P, "t"),
            "proot_dvr": proot_adjunction_is_dvr(P, ["t"]),
            "conormal": conormal_check(P),
            "recheck": v.recheck(),
            "dt": [str(x) for x in v.rows[0]],
        }
        if not v.verdict:
            row["dependence"] = {t: str(c) for t, c in zip(v.basis, v.witness)}
        row["refutation"] = ref.counterexample.to_json(M) if ref.found else None
        rows.append(row)

    phi = parse("E r, s (!InO(r) & InO(r^2*(s^5 - t)))", fixture("K3").field)
    evals = {}
    for name in ("K3", "K2"):
        M = models[name]
        evals[name] = eval_bounded(phi, M, 20000).to_json(M.show)

    F5x = FieldPresentation(5, ["x"])
    F5t = FieldPresentation(5, ["t"])
    places = enumerate_places(F5x, 2)
    exc = exceptional_places(places, "x^2")
    scan = scan_smooth(enumerate_places(F5t, 3), "t^2 + t")
    embeddings = []
    for a, b, m in EMBEDDING_PAIRS:
        emb = build_embedding(complete_at(fixture(a), 4), complete_at(fixture(b), 4), m, seed=seed)
        embeddings.append({"source": a, "target": b, "kind": emb.kind, "pi_image": emb.to_json()["pi_image"],
                           "checks": emb.checks})
    return {
        "command": "corpus",
        "p": 5,
        "example_1_5": rows,
        "ur_sentence": print_formula(ur_sentence("t", 5)),
        "phi": {"formula": print_formula(phi), "verdicts": evals},
        "places_F5x_degree_1": sum(1 for P in places if (P.residue_degree or 0) <= 1),
        "exceptional_F5x_t_x2": sorted(P.label for P, _ in exc),
        "scan_F5t_h_t2_plus_t": [r.place.label for r in scan if r.status == "vanishes"],
        "embeddings": embeddings,
    }


# verdicts that must hold whatever the golden file says
EXPECTED = {
    ("K1", "formally_smooth"): False, ("K2", "formally_smooth"): True, ("K3", "formally_smooth"): False,
    ("K1", "ur_t"): False, ("K2", "ur_t"): True, ("K3", "ur_t"): False,
}


def golden_path() -> Path:
    return Path(str(resources.files("charp") / "golden" / "corpus.json"))


def _diff(a, b, path="") -> List[str]:
    if isinstance(a, dict) and isinstance(b, dict):
        out = []
        for k in sorted(set(a) | set(b)):
            if k not in a or k not in b:
                out.append(f"{path}/{k}: {'missing' if k not in a else 'unexpected'}")
            else:
                out.extend(_diff(a[k], b[k], f"{path}/{k}"))
        return out
    if isinstance(a, list) and isinstance(b, list) and len(a) == len(b):
        return [d for i, (x, y) in enumerate(zip(a, b)) for d in _diff(x, y, f"{path}/{i}")]
    return [] if a == b else [f"{path}: expected {json.dumps(a)}, got {json.dumps(b)}"]


def cmd_corpus(cfg: RunConfig) -> dict:
    report = corpus_report(cfg.seed)
    problems = []
    for row in report["example_1_5"]:
        for key in ("formally_smooth", "ur_t"):
            want = EXPECTED[(row["place"], key)]
            if row[key] != want:
                problems.append(f"{row['place']}.{key}: expected {want}, got {row[key]}")
        if not row["formally_smooth"] and "dependence" not in row:
            problems.append(f"{row['place']}: no dependence witness")
        if row["proot_dvr"] != row["formally_smooth"]:
            problems.append(f"{row['place']}: p-root adjunction disagrees with the differential criterion")
    path = Path(cfg.options.get("golden") or golden_path())
    if cfg.options.get("update"):
        path.write_text(_dumps(report) + "\n", encoding="utf-8")
    elif not path.exists():
        problems.append(f"golden file {path} is missing")
    else:
        golden = json.loads(path.read_text(encoding="utf-8"))
        problems.extend(_diff(golden, report))
    report["golden_diff"] = problems
    report["status"] = "fail" if problems else "pass"
    return report


COMMANDS = {
    "tower check": cmd_tower_check,
    "smooth": cmd_smooth,
    "urt": cmd_urt,
    "insep": cmd_insep,
    "places": cmd_places,
    "exceptional": cmd_exceptional,
    "scan-smooth": cmd_scan_smooth,
    "translate": cmd_translate,
    "eval": cmd_eval,
    "embed": cmd_embed,
    "corpus": cmd_corpus,
}


# ---------------------------------------------------------------------------
# schemas and output


def load_schema(name: str) -> dict:
    text = (resources.files("charp") / "schemas" / f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def schema_for(command: str) -> str:
    return command.replace(" ", "-")


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, ensure_ascii=False, sort_keys=True)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return _dumps(doc) + "\n"
    records = doc.get("records") or doc.get("example_1_5")
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        if records:
            keys = list(dict.fromkeys(k for r in records for k in r))
            w.writerow(keys)
            for r in records:
                w.writerow([_cell(r.get(k)) for k in keys])
        else:
            w.writerow(["key", "value"])
            for k, v in doc.items():
                w.writerow([k, _cell(v)])
        return buf.getvalue()
    for k, v in doc.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            buf.write(f"{k}:\n")
            for r in v:
                buf.write("  " + "  ".join(f"{a}={_cell(b)}" for a, b in r.items()) + "\n")
        else:
            buf.write(f"{k}: {_cell(v)}\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--workers", type=int, default=1, help="processes for place scans")
    common.add_argument("--budget", type=int, default=None, help="step budget (default: CHARP_BUDGET or 10^7)")

    place = argparse.ArgumentParser(add_help=False)
    place.add_argument("--fixture", help="a bundled place, e.g. K2")
    place.add_argument("--place", help="place JSON file")

    tower = argparse.ArgumentParser(add_help=False)
    tower.add_argument("--tower", required=True, help="field presentation JSON file")

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--degree", type=int, help="bound on the degree of the base place")
    bounds.add_argument("--height", type=int, help="enumerate places (x - a(s)) with deg a <= height instead")

    parser = argparse.ArgumentParser(prog="charp", description="Formal smoothness of DVRs in characteristic p.")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tower", help="field presentations")
    tsub = t.add_subparsers(dest="action", required=True)
    tsub.add_parser("check", parents=[common, tower], help="validate a presentation, report its p-basis")

    s = sub.add_parser("smooth", parents=[common, place], help="differential smoothness verdict")
    s.add_argument("--subfield", help="comma-separated generators of C (default: the place's constants)")
    s.add_argument("--basis", help="comma-separated elements T of C (default: a p-basis of C)")

    u = sub.add_parser("urt", parents=[common, place], help="is dt (x) 1 nonzero")
    u.add_argument("--t", required=True, help="element of C")

    i = sub.add_parser("insep", parents=[common, tower], help="inseparability degree of L over a layer")
    i.add_argument("--over", required=True, help="layer index or comma-separated generators")

    sub.add_parser("places", parents=[common, tower, bounds], help="enumerate places")

    e = sub.add_parser("exceptional", parents=[common, tower, bounds], help="exceptional places of t")
    e.add_argument("--t", required=True)

    sc = sub.add_parser("scan-smooth", parents=[common, tower, bounds], help="places where dh (x) 1 vanishes")
    sc.add_argument("--h", required=True)

    tr = sub.add_parser("translate", parents=[common], help="rewrite a formula")
    tr.add_argument("--formula", required=True)
    tr.add_argument("--mode", choices=("valuation", "residue"), required=True)
    tr.add_argument("--parameter", help="name of the uniformiser parameter (valuation mode)")
    tr.add_argument("--tower", help="field whose generator names are constants")

    ev = sub.add_parser("eval", parents=[common, place], help="bounded evaluation of a sentence")
    ev.add_argument("--formula", required=True)
    ev.add_argument("--field", help="a prime p, or a finite field presentation file")
    ev.add_argument("--precision", type=int, help="truncation N of the completion (default 8)")

    em = sub.add_parser("embed", parents=[common], help="embedding of completions mod pi^N")
    em.add_argument("--source", required=True, help="fixture name or place file")
    em.add_argument("--target", required=True, help="fixture name or place file")
    em.add_argument("--map", required=True, help="residue embedding, e.g. 'x=0' or a JSON object")
    em.add_argument("--precision", type=int, help="N (default 4)")

    co = sub.add_parser("corpus", parents=[common], help="run the bundled examples against the golden file")
    co.add_argument("--update", action="store_true", help="rewrite the golden file")
    co.add_argument("--golden", help="alternative golden file")
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    fmt = ns.format
    try:
        cfg = RunConfig.from_args(ns)
        doc = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.print_usage(err)
        err.write(f"charp: error: {exc}\n")
        return EXIT_USAGE
    except (CharpError, ValueError, ArithmeticError) as exc:
        code = getattr(exc, "code", "invalid_input" if isinstance(exc, ValueError) else "arithmetic")
        report = {"error": {"code": code, "type": type(exc).__name__, "message": str(exc)}}
        out.write(render(report, fmt))
        err.write(f"charp: {code}: {exc}\n")
        return EXIT_ERROR
    out.write(render(doc, fmt))
    if cfg.command == "corpus" and doc["status"] != "pass":
        for line in doc["golden_diff"]:
            err.write(f"corpus: {line}\n")
        return EXIT_VERDICT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
