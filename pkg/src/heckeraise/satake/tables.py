"""Iwahori-spherical representation types of GL(3) and GSp(4) as literal data.

Dimension rows are (K, J, I) for GL(3) and (K, K', J, J', I) for GSp(4),
where K is hyperspecial, K' paramodular, J Klingen, J' Siegel and I Iwahori.
Flag entries are None (blank), "yes" (a bullet) or a condition string.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

GL3 = "GL3"
GSP4 = "GSp4"

GL3_COLUMNS = ("K", "J", "I")
GSP4_COLUMNS = ("K", "K'", "J", "J'", "I")

# label: (dims, unitary, tempered, l2, generic, remark)
GL3_TABLE = {
    "I": ((1, 3, 6), "below", "|chi_i|=1", None, "yes", None),
    "IIa": ((0, 1, 3), "|chi_i|=1", "|chi_i|=1", None, "yes", None),
    "IIb": ((1, 2, 3), "|chi_i|=1", None, None, None, None),
    "IIIa": ((0, 0, 1), "|chi|=1", "|chi|=1", "|chi|=1", "yes", None),
    "IIIb": ((0, 1, 2), None, None, None, None, "not unitary"),
    "IIIc": ((0, 1, 2), None, None, None, None, "not unitary"),
    "IIId": ((1, 1, 1), "|chi|=1", None, None, None, "irrelevant"),
}

# label: (dims, tempered, l2, generic, remark); no unitary column for GSp(4)
GSP4_TABLE = {
    "I": ((1, 2, 4, 4, 8), "|chi_i|=|sigma|=1", None, "yes", None),
    "IIa": ((0, 1, 2, 1, 4), "|chi|=|sigma|=1", None, "yes", None),
    "IIb": ((1, 1, 2, 3, 4), None, None, None, None),
    "IIIa": ((0, 0, 1, 2, 4), "|chi|=|sigma|=1", None, "yes", None),
    "IIIb": ((1, 2, 3, 2, 4), None, None, None, None),
    "IVa": ((0, 0, 0, 0, 1), "yes", "yes", "yes", None),
    "IVb": ((0, 0, 1, 2, 3), None, None, None, "not unitary"),
    "IVc": ((0, 1, 2, 1, 3), None, None, None, "not unitary"),
    "IVd": ((1, 1, 1, 1, 1), None, None, None, "irrelevant"),
    "Va": ((0, 0, 1, 0, 2), "yes", "yes", "yes", None),
    "Vb": ((0, 1, 1, 1, 2), None, None, None, None),
    "Vc": ((0, 1, 1, 1, 2), None, None, None, None),
    "Vd": ((1, 0, 1, 2, 2), None, None, None, None),
    "VIa": ((0, 0, 1, 1, 3), "yes", None, "yes", None),
    "VIb": ((0, 0, 0, 1, 1), "yes", None, None, None),
    "VIc": ((0, 1, 1, 0, 1), None, None, None, None),
    "VId": ((1, 1, 2, 2, 3), None, None, None, None),
}

GL3_FAMILIES = {
    "I": ("I",),
    "II": ("IIa", "IIb"),
    "III": ("IIIa", "IIIb", "IIIc", "IIId"),
}

GSP4_FAMILIES = {
    "I": ("I",),
    "II": ("IIa", "IIb"),
    "III": ("IIIa", "IIIb"),
    "IV": ("IVa", "IVb", "IVc", "IVd"),
    "V": ("Va", "Vb", "Vc", "Vd"),
    "VI": ("VIa", "VIb", "VIc", "VId"),
}

TABLES_SHA256 = "33239a15336ad048f6d2e85e50fc626ca187c853daca2b8c994b97521516d2ff"


def _canonical_blob(gl3=None, gsp4=None) -> bytes:
    gl3 = GL3_TABLE if gl3 is None else gl3
    gsp4 = GSP4_TABLE if gsp4 is None else gsp4
    doc = {
        GL3: {k: [list(v[0])] + list(v[1:]) for k, v in gl3.items()},
        GSP4: {k: [list(v[0])] + list(v[1:]) for k, v in gsp4.items()},
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


def tables_digest(gl3=None, gsp4=None) -> str:
    return hashlib.sha256(_canonical_blob(gl3, gsp4)).hexdigest()


def verify_checksum(gl3=None, gsp4=None) -> bool:
    return tables_digest(gl3, gsp4) == TABLES_SHA256


@dataclass(frozen=True)
class RepType:
    group: str
    label: str
    unitary: str | None
    tempered: str | None
    square_integrable: str | None
    generic: bool
    remark: str | None

    @property
    def family(self) -> str:
        return self.label.rstrip("abcd")

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "label": self.label,
            "unitary": self.unitary,
            "tempered": self.tempered,
            "square_integrable": self.square_integrable,
            "generic": self.generic,
            "remark": self.remark,
        }


@dataclass(frozen=True)
class ParahoricProfile:
    group: str
    label: str
    columns: tuple
    dims: tuple

    def as_dict(self) -> dict:
        return dict(zip(self.columns, self.dims))

    def __getitem__(self, column: str) -> int:
        return self.as_dict()[column]


def rep_type(group: str, label: str) -> RepType:
    if group == GL3:
        dims, uni, temp, l2, gen, remark = GL3_TABLE[label]
        return RepType(GL3, label, uni, temp, l2, gen == "yes", remark)
    if group == GSP4:
        dims, temp, l2, gen, remark = GSP4_TABLE[label]
        return RepType(GSP4, label, None, temp, l2, gen == "yes", remark)
    raise KeyError(group)


def all_types(group: str) -> list[RepType]:
    table = GL3_TABLE if group == GL3 else GSP4_TABLE
    return [rep_type(group, lab) for lab in table]


def profile(t: RepType) -> ParahoricProfile:
    if t.group == GL3:
        return ParahoricProfile(GL3, t.label, GL3_COLUMNS, GL3_TABLE[t.label][0])
    return ParahoricProfile(GSP4, t.label, GSP4_COLUMNS, GSP4_TABLE[t.label][0])


def profile_gl3(t) -> ParahoricProfile:
    t = rep_type(GL3, t) if isinstance(t, str) else t
    if t.group != GL3:
        raise ValueError("not a GL3 type")
    return profile(t)


def profile_gsp4(t) -> ParahoricProfile:
    t = rep_type(GSP4, t) if isinstance(t, str) else t
    if t.group != GSP4:
        raise ValueError("not a GSp4 type")
    return profile(t)


def constituent_sums(group: str) -> dict:
    """Column-wise sums of the constituent rows of each family."""
    families = GL3_FAMILIES if group == GL3 else GSP4_FAMILIES
    out = {}
    for fam, labels in families.items():
        rows = [profile(rep_type(group, lab)).dims for lab in labels]
        out[fam] = tuple(sum(col) for col in zip(*rows))
    return out
