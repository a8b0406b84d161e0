"""Printed values of rho on the standard simplices of dimension 0..3.

Each term is (coefficient, word, marked) in the compact digit notation used
when writing these formulas by hand: "10|012|20" is ([1,0]|[0,1,2]|[2,0]).
"""


def expand(word: str, marked: str) -> str:
    def bead(t):
        return "[" + ",".join(t) + "]"
    w = "(" + "|".join(bead(b) for b in word.split("|")) + ")" if word else f"(id_{marked[-1]})"
    return w + bead(marked)


RHO_PRINTED = {
    0: [(+1, "", "0")],
    1: [(+1, "10", "01")],
    2: [(+1, "20", "012"),
        (+1, "10|012|20", "01"),
        (+1, "20|012|21", "12"),
        (+1, "10|012|20|012|21", "1")],
    3: [(+1, "30", "0123"),
        (-1, "20|023|30", "012"),
        (+1, "30|013|31", "123"),
        (-1, "10|0123|30", "01"),
        (-1, "20|0123|31", "12"),
        (-1, "30|0123|32", "23"),
        (+1, "10|012|20|023|30", "01"),
        (+1, "20|012|21|123|31", "12"),
        (-1, "20|023|30|013|31", "12"),
        (+1, "30|013|31|123|32", "23"),
        (+1, "10|012|20|0123|31", "1"),
        (-1, "10|0123|30|013|31", "1"),
        (+1, "20|023|30|0123|32", "2"),
        (-1, "20|0123|31|123|32", "2"),
        (+1, "10|012|20|023|30|013|31", "1"),
        (-1, "10|012|20|012|21|123|31", "1"),
        (-1, "20|023|30|013|31|123|32", "2"),
        (+1, "20|012|21|123|31|123|32", "2")],
}


def rho_golden_lines(k: int) -> list[str]:
    """Canonically sorted serialization lines of the printed value."""
    terms = [(expand(w, m), c) for c, w, m in RHO_PRINTED[k]]
    return [f"{c:+d}·{n}" for n, c in sorted(terms)]
