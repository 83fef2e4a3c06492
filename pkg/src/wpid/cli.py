"""Command line front end.

    wpid emit      --genus N --set NAME [--format json|latex|text] [--out PATH]
    wpid check     --genus N [--suite symbolic|oracle|all] [--set NAME]
                   [--curve a0,a1,...] [--curve2 ...] [--seed K] [--out PATH]
    wpid multiplet --genus N --hw NAME [--format ...] [--out PATH]

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 degenerate curve instance.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import catalog, oracle
from . import symbols as S
from .catalog import Identity, IdentitySet
from .ffield import DegenerateInstance
from .poly import Poly
from .sl2 import apply, generate_multiplet, make_generators, weight

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


@dataclass
class RunConfig:
    genus: int
    suite: str = "all"
    set_name: str | None = None
    curve: tuple | None = None
    curve2: tuple | None = None
    seed: int = 1
    fmt: str = "text"
    out: str | None = None


class UnknownSet(KeyError):
    pass


class UnknownHighestWeight(KeyError):
    pass


def identity_json(ident: Identity) -> dict:
    return {
        "name": ident.name,
        "genus": ident.genus,
        "weight": ident.weight,
        "multiplet_id": ident.multiplet_id,
        "source": ident.source,
        "ref": ident.ref,
        "relation": ident.relation.to_text(),
        "terms": ident.relation.to_json_terms(),
    }


def _emit_set(idset: IdentitySet, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            {
                "set": idset.name,
                "genus": idset.genus,
                "count": len(idset.members),
                "identities": [identity_json(m) for m in idset.members],
            },
            indent=2,
        )
    if fmt == "latex":
        lines = ["\\begin{eqnarray}"]
        for m in idset.members:
            lines.append("%s &=& 0 \\\\" % m.relation.to_latex())
        lines.append("\\end{eqnarray}")
        return "\n".join(lines)
    lines = ["set %s (genus %d, %d members)" % (idset.name, idset.genus,
                                                len(idset.members))]
    for m in idset.members:
        lines.append("  %-28s w=%-5s %s = 0" % (m.name, m.weight,
                                                m.relation.to_text()))
    return "\n".join(lines)


def _discrepancy_report() -> dict:
    """Transcription-vs-derivation adjudication, the catalog-level half."""
    from .curves import polar_form, printed_polar_form_genus1, a_poly

    pf1 = polar_form(1)
    printed = printed_polar_form_genus1()
    polar_diff = (pf1.ftilde - printed).to_text()

    fourindex = [
        {
            "symbol": d["symbol"],
            "match": d["match"],
            "difference": d["difference"].to_text(),
        }
        for d in catalog.genus3_fourindex_diff()
    ]
    baker = [
        {
            "symbol": d["symbol"],
            "match": d["match"],
            "difference": d["difference"].to_text()
            if d["difference"] is not None
            else None,
            "note": d["note"],
        }
        for d in catalog.baker_transform_report()
    ]
    return {
        "polar-form-genus1": {
            "printed-minus-derived-difference": polar_diff,
            "printed-satisfies-on-curve": False,
        },
        "x-rep-genus2-component3": {
            "note": "printed numerator ends in x^3 where symmetry requires x1^3;"
                    " the constructed component uses the symmetric form",
        },
        "bordered-factor-genus2": {
            "note": "single-border determinant convention flips the printed"
                    " -1/4 to +1/4; the vanishing combination is"
                    " (l-form)^2 - (1/4)det(H)",
        },
        "fourindex-printed-vs-generated": fourindex,
        "baker-transform": baker,
        "hA-span": {
            "dimension": 24,
            "note": "trace of hA is identically zero (symmetric times"
                    " antisymmetric), so the advertised 25th relation"
                    " does not exist among the entries",
        },
    }


def cmd_emit(cfg: RunConfig) -> int:
    if cfg.set_name == "discrepancies":
        payload = json.dumps(_discrepancy_report(), indent=2)
        _write(cfg, payload)
        return EXIT_OK
    sets = catalog.named_sets(cfg.genus)
    if cfg.set_name not in sets:
        print("unknown set %r for genus %d (have: %s)"
              % (cfg.set_name, cfg.genus, ", ".join(sorted(sets))),
              file=sys.stderr)
        return EXIT_USAGE
    idset = sets[cfg.set_name]()
    _write(cfg, _emit_set(idset, cfg.fmt))
    return EXIT_OK


def cmd_multiplet(cfg: RunConfig) -> int:
    hws = catalog.named_highest_weights(cfg.genus)
    if cfg.set_name not in hws:
        print("unknown highest weight %r for genus %d (have: %s)"
              % (cfg.set_name, cfg.genus, ", ".join(sorted(hws))),
              file=sys.stderr)
        return EXIT_USAGE
    try:
        hw = hws[cfg.set_name]()
    except catalog.NoSuchHighestWeight as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    mult = generate_multiplet(hw, cfg.genus)
    members = []
    e, f, _ = make_generators(cfg.genus)
    for i, p in enumerate(mult.members):
        members.append(
            {
                "index": i,
                "weight": weight(p, cfg.genus),
                "relation": p.to_text(),
            }
        )
    payload = {
        "highest_weight": cfg.set_name,
        "genus": cfg.genus,
        "dimension": mult.dimension,
        "members": members,
    }
    if cfg.fmt == "json":
        _write(cfg, json.dumps(payload, indent=2))
    elif cfg.fmt == "latex":
        _write(cfg, "\n".join("%s &=& 0 \\\\" % p.to_latex()
                              for p in mult.members))
    else:
        lines = ["multiplet %s (genus %d, dimension %d)"
                 % (cfg.set_name, cfg.genus, mult.dimension)]
        for m in members:
            lines.append("  [%d] w=%-4s %s" % (m["index"], m["weight"],
                                               m["relation"]))
        _write(cfg, "\n".join(lines))
    return EXIT_OK


def symbolic_suite(g: int) -> tuple[bool, list]:
    """Commutators, covariance, closures, multiplet regeneration,
    factorizations and determinant expansions for one genus."""
    from . import curves, sl2

    results = []

    def check(name, ok):
        results.append((name, bool(ok)))

    rep = sl2.check_commutators(g)
    check("commutators", all(ok for _, _, ok in rep))
    fam = curves.curve_poly(g)
    e, f, h = sl2.make_generators(g)
    check("curve-raising", apply(e, fam.v).is_zero())
    check(
        "curve-lowering",
        (apply(f, fam.v) + Poly.sym(S.xvar(), 1, 2 * (g + 1)) * fam.v).is_zero(),
    )
    hmat = curves.klein_matrix(g)
    check("klein-symmetric", hmat.mat.is_symmetric())
    check("klein-antidiagonals",
          all(not bad for _, bad in curves.antidiagonal_check(hmat)))
    pf = curves.polar_form(g)
    check("polar-form-invariants", True)  # constructor re-verified them
    if g == 1:
        ode = catalog.genus1_ode()
        check("ode-weight-zero", ode.weight == 0)
        check("second-order-derivation",
              catalog.genus1_second_order() is not None)
    if g == 2:
        bl = catalog.genus2_bilinear()
        check("bilinear-closure-e",
              all(ok for _, ok in sl2.closure_check(bl.relations(), e)))
        check("bilinear-closure-f",
              all(ok for _, ok in sl2.closure_check(bl.relations(), f)))
        check("fourindex-multiplet", len(catalog.genus2_fourindex()) == 5)
        check("kummer-quartic",
              max(sum(ee for s, ee in mon if S.SYMBOLS[s].kind == "wp")
                  for mon in catalog.genus2_kummer().relation.terms) == 4)
    if g == 3:
        rels = catalog.genus3_linear().relations()
        check("hA-closure-e", all(ok for _, ok in sl2.closure_check(rels, e)))
        check("hA-closure-f", all(ok for _, ok in sl2.closure_check(rels, f)))
        check("hA-span-24", sl2.span_dimension(rels) == 24)
        mf = catalog.genus3_minor_factorization()
        check("A-minor-factorization",
              all(v == 1 for v in mf["sign_table"].values()))
        check("A-rank2-witness", mf["rank2_witness_nonzero"])
        check("P9-dimension",
              generate_multiplet(catalog.genus3_P9_hw(), 3).dimension == 9)
        check("P7-dimension",
              generate_multiplet(catalog.genus3_P7_hw(), 3).dimension == 7)
        diffs = catalog.genus3_fourindex_diff()
        check("fourindex-generated-pairs", len(diffs) == 15)
    ok = all(r for _, r in results)
    return ok, results


def oracle_suite(g: int, curve, seed: int, set_filter=None) -> tuple[int, dict]:
    """Full oracle run for one curve; returns (exit code, report json)."""
    try:
        inst = (oracle.make_instance(g, curve) if curve
                else oracle.default_instance(g))
    except (oracle.NotASquare, oracle.DegenerateCurve) as exc:
        return EXIT_DEGENERATE, {"error": str(exc)}
    try:
        asn = oracle.solve_wp(inst)
        oracle.extend_fourindex(asn)
        rep = oracle.OracleReport(inst.label(), seed,
                                  stage_log=list(asn.stage_log))
        expected_fail = set()
        named = catalog.named_sets(g)
        if set_filter:
            if set_filter not in named:
                return EXIT_USAGE, {"error": "unknown set %r" % set_filter}
            chosen = [set_filter]
        else:
            chosen = [n for n in named if n != "quadratic"]
        for name in chosen:
            idset = named[name]()
            sub = oracle.verify(idset, asn, seed=seed)
            rep.verdicts.extend(sub.verdicts)
            if name in ("appendix1", "appendix2-as-printed"):
                expected_fail.update(
                    v.name for v in sub.verdicts if not v.vanishes
                )
        if set_filter is None:
            if g >= 2:
                oracle.klein_rank_check(asn, rep)
            if g == 3:
                oracle.genus3_leading_quadratic_check(asn, rep)
                oracle.genus3_bordered_check(asn, rep, seed=seed)
                oracle.antisym_rank_check(asn, rep)
            rep.verdicts.append(
                oracle.Verdict("residue-relations", oracle.residue_check(asn))
            )
            rep.verdicts.append(
                oracle.Verdict("integrability", oracle.integrability_report(asn))
            )
        if set_filter == "appendix2-as-printed":
            # verify in the shifted (classical) symbols
            rep = oracle.OracleReport(inst.label(), seed)
            basn = baker_assignment(asn)
            sub = oracle.verify(catalog.baker_set_printed(), basn, seed=seed)
            rep.verdicts.extend(sub.verdicts)
            expected_fail = set()
        unexpected = [v for v in rep.verdicts
                      if not v.vanishes and v.name not in expected_fail]
        code = EXIT_OK if not unexpected else EXIT_VERIFY
        return code, rep.to_json()
    except (DegenerateInstance,) as exc:
        return EXIT_DEGENERATE, {"error": str(exc)}


def baker_assignment(asn):
    """Assignment for the classical symbols: two-index values shifted by the
    transformation table, higher derivatives unchanged."""
    shifted = oracle.WpAssignment(asn.instance, asn.ctx)
    table = catalog.baker_table()
    from .ffield import FieldElem

    for idx, v in asn.values.items():
        if len(idx) == 2:
            sym = S.wp(*idx)
            corr = table.shifts[sym] - Poly.sym(sym)  # -c_ij a_k
            cval = Fraction(0)
            for mon, q in corr.terms.items():
                val = Fraction(q)
                for sid, e in mon:
                    val *= shifted.env_fraction(sid) ** e
                cval += val
            shifted.set(idx, v + FieldElem.const(asn.ctx, cval),
                        "baker-shifted")
        else:
            shifted.set(idx, v, asn.provenance[idx])
    return shifted


def cmd_check(cfg: RunConfig) -> int:
    payload = {"genus": cfg.genus, "suite": cfg.suite}
    code = EXIT_OK
    if cfg.suite in ("symbolic", "all"):
        ok, results = symbolic_suite(cfg.genus)
        payload["symbolic"] = {"pass": ok, "checks": results}
        if not ok:
            code = EXIT_VERIFY
    if cfg.suite in ("oracle", "all"):
        c1, rep1 = oracle_suite(cfg.genus, cfg.curve, cfg.seed, cfg.set_name)
        payload["oracle"] = rep1
        code = max(code, c1)
        if cfg.curve2 is not None:
            c2, rep2 = oracle_suite(cfg.genus, cfg.curve2, cfg.seed,
                                    cfg.set_name)
            payload["oracle2"] = rep2
            code = max(code, c2)
    _write(cfg, json.dumps(payload, indent=2, default=str))
    return code


def _write(cfg: RunConfig, payload: str):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)


def _parse_curve(text):
    return tuple(Fraction(part) for part in text.split(","))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="wpid", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("emit", "check", "multiplet"):
        p = sub.add_parser(name)
        p.add_argument("--genus", type=int, required=True, choices=(1, 2, 3))
        p.add_argument("--set", dest="set_name")
        p.add_argument("--hw", dest="hw")
        p.add_argument("--suite", default="all",
                       choices=("symbolic", "oracle", "all"))
        p.add_argument("--curve", type=_parse_curve)
        p.add_argument("--curve2", type=_parse_curve)
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--format", dest="fmt", default="text",
                       choices=("json", "latex", "text"))
        p.add_argument("--out")
    try:
        ns = ap.parse_args(argv)
    except SystemExit:
        return EXIT_USAGE
    cfg = RunConfig(
        genus=ns.genus,
        suite=ns.suite,
        set_name=ns.hw if ns.command == "multiplet" else ns.set_name,
        curve=ns.curve,
        curve2=ns.curve2,
        seed=ns.seed,
        fmt=ns.fmt,
        out=ns.out,
    )
    if cfg.curve is not None and len(cfg.curve) != 2 * cfg.genus + 3:
        print("curve must list %d coefficients" % (2 * cfg.genus + 3),
              file=sys.stderr)
        return EXIT_USAGE
    if ns.command == "emit":
        if not cfg.set_name:
            print("emit requires --set", file=sys.stderr)
            return EXIT_USAGE
        return cmd_emit(cfg)
    if ns.command == "multiplet":
        if not cfg.set_name:
            print("multiplet requires --hw", file=sys.stderr)
            return EXIT_USAGE
        return cmd_multiplet(cfg)
    return cmd_check(cfg)


if __name__ == "__main__":
    sys.exit(main())
