"""Verification suites, as run by ``ringelhall verify``.

Each suite returns a list of records with a pass or fail status; failed
records carry a counterexample.
"""

from ringelhall.suites import SUITES, default_bound, resolve_quiver, run_suite, table_for

q = resolve_quiver("a2.q")
for name in ("serre", "pbw", "qserre", "thm61", "pi", "cy"):
    kind, _ = SUITES[name]
    T = table_for(q, *default_bound(q, name)) if kind == "table" else None
    recs = run_suite(name, T=T, seed=1, trials=5)
    status = "pass" if all(r["status"] != "fail" for r in recs) else "fail"
    print(f"{name:7s} {status}: " + ", ".join(r["check"] for r in recs))
