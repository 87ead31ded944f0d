"""Figure labels of the (9,4) AR quiver resolved to intervals.

The dictionary is derived, not typed in: the printed figure is stored as a
grid transcription, and each grid cell is matched to the indecomposable whose
computed AR coordinates (column, length) coincide with it.
"""

from __future__ import annotations

import json
from importlib import resources

from .algebra import Interval, NakayamaAlgebra, parse_interval
from .category import modcat


def _load_figure() -> dict:
    with resources.files("nakcot.data").joinpath("ar_figure_9_4.json").open() as fh:
        return json.load(fh)


def derive_label_dictionary() -> dict[str, Interval]:
    fig = _load_figure()
    cat = modcat(NakayamaAlgebra(fig["n"], fig["m"]))
    by_pos = {pos: iv for iv, pos in cat.ar_coordinates.items()}
    out: dict[str, Interval] = {}
    for row in fig["rows"]:
        for k, name in enumerate(row["labels"]):
            pos = (row["first_column"] + 2 * k, row["length"])
            if pos not in by_pos:
                raise ValueError(f"figure cell {name} at {pos} has no module")
            out[name] = by_pos[pos]
    if len(set(out.values())) != cat.size:
        raise ValueError("figure labels do not biject with the indecomposables")
    return out


def load_label_dictionary() -> dict[str, Interval]:
    """The shipped dictionary file (regenerate with ``dictionary_payload()``)."""
    with resources.files("nakcot.data").joinpath("labels_9_4.json").open() as fh:
        raw = json.load(fh)
    return {k: parse_interval(v) for k, v in raw["labels"].items()}


def dictionary_payload() -> dict:
    d = derive_label_dictionary()
    return {
        "algebra": {"n": 9, "m": 4},
        "convention": "arrows 1->2->...->n; top:len has support top..top+len-1",
        "labels": {k: v.label for k, v in sorted(d.items())},
    }


def resolve_label(text: str, dictionary: dict[str, Interval] | None = None) -> Interval:
    text = text.strip()
    if dictionary and text in dictionary:
        return dictionary[text]
    return parse_interval(text)


# the Example's named subcategories, in figure labels
EXAMPLE_U = ["M^1_1", "M^2_1", "M^3_1"] + [f"P_{i}" for i in range(1, 7)] + [
    f"M^{i}_2" for i in range(1, 7)
]
EXAMPLE_W = [f"M^{i}_2" for i in range(1, 4)] + [f"P_{i}" for i in range(1, 7)]
EXAMPLE_U_PRIME = EXAMPLE_U + [f"M^{i}_3" for i in range(4, 7)]
EXAMPLE_W1_MINUS_W = [f"M^{i}_3" for i in range(1, 7)]
EXAMPLE_X_MINUS_W = [f"M^{i}_3" for i in range(4, 7)]
