"""Timed end-to-end genus-3 oracle run on the default curve."""
import time

from wpid.catalog import genus3_P5, genus3_linear, genus3_fourindex_generated
from wpid.oracle import (OracleReport, antisym_value_matrix, extend_fourindex,
                         genus3_bordered_check, genus3_leading_quadratic_check,
                         integrability_report, klein_rank_check, make_instance,
                         residue_check, solve_wp, verify)


def main():
    T0 = time.time()
    inst = make_instance(3, (1, 1, 1, 1, 2, 1, 1, 1, 4))
    asn = solve_wp(inst)
    print("solve: %.1fs" % (time.time() - T0), flush=True)
    rep = OracleReport(inst.label(), 1)
    t0 = time.time()
    r = verify(genus3_linear(), asn)
    print("25 hA: %.1fs all=%s" % (time.time() - t0, r.all_vanish()), flush=True)
    t0 = time.time()
    r2 = verify(genus3_P5(), asn)
    print("P5: %.1fs all=%s" % (time.time() - t0, r2.all_vanish()), flush=True)
    t0 = time.time()
    klein_rank_check(asn, rep)
    print("h rank: %.1fs fails=%s" % (time.time() - t0, rep.failures()), flush=True)
    t0 = time.time()
    genus3_leading_quadratic_check(asn, rep)
    print("leading: %.1fs fails=%s" % (time.time() - t0, rep.failures()), flush=True)
    t0 = time.time()
    genus3_bordered_check(asn, rep, seed=1, draws=5)
    print("bordered: %.1fs fails=%s" % (time.time() - t0, rep.failures()), flush=True)
    t0 = time.time()
    extend_fourindex(asn)
    print("extend: %.1fs" % (time.time() - t0), flush=True)
    t0 = time.time()
    r3 = verify(genus3_fourindex_generated(), asn)
    print("15 fourindex: %.1fs all=%s %s" % (time.time() - t0, r3.all_vanish(),
                                             r3.failures()), flush=True)
    t0 = time.time()
    print("integrability:", integrability_report(asn),
          "%.1fs" % (time.time() - t0), flush=True)
    print("residues:", residue_check(asn), flush=True)
    avals = antisym_value_matrix(asn)
    w = avals[0][3] * avals[1][4] - avals[0][4] * avals[1][3]
    print("A 2x2 witness nonzero:", not w.is_zero(), flush=True)
    print("TOTAL: %.1fs" % (time.time() - T0), flush=True)


if __name__ == "__main__":
    main()
