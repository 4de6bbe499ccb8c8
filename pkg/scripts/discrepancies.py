"""Print each stated identity that the exact computation does not reproduce, next to what it gives instead."""

from gsp4cert.checks import _lin
from gsp4cert.forms import (DIAG_I_MINUS_I, ad_k_theta_cs_table, named_forms, stated_ad_table, pullback,
                            pullback_scalars_cs)
from gsp4cert.gsp4 import STD, verify_frame_change
from gsp4cert.invcalc import closedness_condition, d_table, derived_relation, stated_d_table, weights_of_section6_forms
from gsp4cert.ktypes import eta_lowering_chain


def show(title, stated, computed):
    print(f"{title}\n  stated:   {stated}\n  computed: {computed}\n")


def main():
    rep = verify_frame_change(printed=True)
    for f in rep.failures:
        show("root frame vector", f, "½h + i n0 − i n2 + n3 has weight −α+β")

    chain = eta_lowering_chain()
    F = named_forms()
    for j in (1, 0, -1):
        if chain.ratios[j] is None:
            show(f"η_{j} in the k-span of η_2", F[f"eta_{j}"], chain.chain[j])

    w = weights_of_section6_forms()
    for name in ("eta^+", "eta^-", "eta_+", "eta_-"):
        got_w = {**w.eta_upper, **w.eta_lower}[name]
        if got_w != w.expected[name]:
            show(f"H-weight of {name}", w.expected[name].label(), got_w.label() if got_w else None)

    got, want = d_table(), stated_d_table()
    for x in STD.borel_names:
        if got[x] != want[x]:
            show(f"d({x}*)", want[x], got[x])

    res = closedness_condition()
    if not res.matches_stated:
        show("closedness obstruction", res.stated_obstruction, res.obstruction)
        print(f"  derived relation closes the form: {res.closed_under(derived_relation())}\n")

    table, stated = ad_k_theta_cs_table(), stated_ad_table()
    for j, x in enumerate(STD.borel_names):
        if _lin(table[j]) != _lin(stated[x]):
            show(f"Ad_k(θ) {x}", _lin(stated[x]), _lin(table[j]))

    f1, f2 = pullback_scalars_cs()
    show("pullback scalars in (c, s)", "c², s²", f"{f1}, {f2}")

    w0 = F["omega0"]
    show("ω0 under diag(1,1,-1,-1)", w0, pullback(DIAG_I_MINUS_I, w0))


if __name__ == "__main__":
    main()
