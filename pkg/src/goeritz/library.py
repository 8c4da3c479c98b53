"""Built-in diagrams.

``torus-2-8`` and ``whitehead`` are transcribed so that the default shading
(unbounded face unshaded) gives the published Goeritz matrices row for row.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import parse_diagram


@dataclass(frozen=True)
class LibraryEntry:
    name: str
    source: str
    description: str
    goeritz: tuple | None = None  # expected matrix under the default shading

    def diagram(self):
        return parse_diagram(self.source)


def braid_closure_pd(n_strands, word, name="B"):
    """PD source for the closure of a braid word.

    Generators are 1-based; ``k`` is sigma_k and ``-k`` its inverse.  Every
    generator index should occur so that the closure is connected.
    """
    labels = list(range(1, n_strands + 1))
    nxt = n_strands + 1
    rows = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < n_strands - 1:
            raise ValueError(f"generator {g} out of range for {n_strands} strands")
        bl, br = labels[i], labels[i + 1]
        tl, tr = nxt, nxt + 1
        nxt += 2
        # counterclockwise from the incoming under-strand end
        rows.append([bl, br, tr, tl] if g > 0 else [br, tr, tl, bl])
        labels[i], labels[i + 1] = tl, tr
    rename = {labels[k]: k + 1 for k in range(n_strands)}
    rows = [[rename.get(x, x) for x in r] for r in rows]
    body = " ; ".join("X " + " ".join(map(str, r)) for r in rows)
    return f"piece {name} {{ {body} }}"


def _unlink(mu, nested):
    names = "ABCD"[:mu]
    text = " ".join(f"piece {c} {{ O }}" for c in names)
    if nested:
        text += "".join(
            f"\nplace {c} in {h}.face(1)" for h, c in zip(names, names[1:])
        )
    return text + "\n"


TREFOIL = "X 1 4 2 5 ; X 3 6 4 1 ; X 5 2 6 3"
HOPF = "X 1 4 2 3 ; X 3 2 4 1"
FIGURE_EIGHT = "X 4 2 5 1 ; X 8 6 1 5 ; X 6 3 7 4 ; X 2 7 3 8"
WHITEHEAD = "X 10 7 5 8 ; X 6 1 7 2 ; X 4 5 1 6 ; X 2 10 3 9 ; X 8 4 9 3"

_ENTRIES = [
    LibraryEntry("unknot-0x", "piece U { O }\n", "crossing-free circle"),
    LibraryEntry("unknot-1x", "piece U { X 1 2 2 1 }\n", "one-crossing unknot (kink)"),
    LibraryEntry("trefoil", f"piece K {{ {TREFOIL} }}\n", "standard trefoil"),
    LibraryEntry("figure-eight", f"piece K {{ {FIGURE_EIGHT} }}\n", "figure-eight knot"),
    LibraryEntry("hopf", f"piece H {{ {HOPF} }}\n", "Hopf link"),
    LibraryEntry(
        "torus-2-8",
        braid_closure_pd(2, [1] * 8, "T") + "\n",
        "(2,8) torus link, closure of sigma_1^8",
        goeritz=((-8, 8), (8, -8)),
    ),
    LibraryEntry(
        "whitehead",
        f"piece W {{ {WHITEHEAD} }}\n",
        "Whitehead link",
        goeritz=((-3, 1, 2), (1, -3, 2), (2, 2, -4)),
    ),
    LibraryEntry(
        "trefoil-hopf",
        f"piece K {{ {TREFOIL} }}\npiece H {{ {HOPF} }}\n",
        "split union of a trefoil and a Hopf link, side by side",
    ),
    LibraryEntry(
        "trefoil-in-trefoil",
        f"piece A {{ {TREFOIL} }}\npiece B {{ {TREFOIL} }}\nplace B in A.face(2)\n",
        "trefoil nested in an unshaded face of another trefoil",
    ),
    LibraryEntry(
        "hopf-in-trefoil",
        f"piece A {{ {TREFOIL} }}\npiece H {{ {HOPF} }}\nplace H in A.face(1)\n",
        "Hopf link nested in a shaded face of a trefoil",
    ),
    LibraryEntry(
        "unlink-3-siblings",
        "piece A { O } piece B { O } piece C { O }\n"
        "place B in A.face(1)\nplace C in A.face(1)\n",
        "two circles side by side inside a third",
    ),
]
for _mu in range(2, 5):
    _ENTRIES.append(
        LibraryEntry(f"unlink-{_mu}", _unlink(_mu, False), f"{_mu} circles side by side")
    )
    _ENTRIES.append(
        LibraryEntry(
            f"unlink-{_mu}-nested", _unlink(_mu, True), f"{_mu} concentric circles"
        )
    )

LIBRARY = {e.name: e for e in _ENTRIES}


def names():
    return sorted(LIBRARY)


def get(name):
    try:
        return LIBRARY[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; try one of {', '.join(names())}") from None


def load(name):
    return get(name).diagram()
