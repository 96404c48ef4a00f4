"""Line-oriented text format for ice quivers with potential and group action.

Sections, each introduced by a keyword line:

    VERTICES        integer ids, whitespace separated
    FROZEN          frozen vertex ids
    ARROWS          one arrow per line:  id: src -> tgt   [deg=d] optional
    FROZEN-ARROWS   frozen arrow ids
    POTENTIAL       one term per line:   coeff * a.b.c    (traversal order)
    GROUP           cyclic N
    ACTION g        generator action:    vertices: (2 3)(5 6)
                    then one arrow image per line:  a -> -b

Blank lines and lines starting with # are ignored. Only cyclic groups are
expressible in the GROUP section; the action of the generator determines the
rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IcefoldError, ParseError
from .groups import FiniteGroup, GroupAction
from .quiver import GradedArrow, IceQuiver, Potential, Vertex

_SECTIONS = ("VERTICES", "FROZEN", "ARROWS", "FROZEN-ARROWS", "POTENTIAL", "GROUP", "ACTION")


def load_fixture(name: str) -> "QuiverFile":
    """Parse one of the bundled example files (a3, a5, zl2-potential)."""
    from importlib import resources

    fname = name if name.endswith(".iq") else f"{name}.iq"
    ref = resources.files("icefold") / "fixtures" / fname
    if not ref.is_file():
        raise ParseError(f"no bundled fixture named {name!r}")
    return parse_iq(ref.read_text())


def fixture_names() -> list[str]:
    from importlib import resources

    folder = resources.files("icefold") / "fixtures"
    return sorted(p.name[:-3] for p in folder.iterdir() if p.name.endswith(".iq"))


@dataclass
class QuiverFile:
    quiver: IceQuiver
    potential: Potential | None
    action: GroupAction | None


def parse_iq(text: str) -> QuiverFile:
    sections: dict[str, list[tuple[int, str]]] = {}
    current: list[tuple[int, str]] | None = None
    action_header = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head = line.split()[0].upper()
        if head in _SECTIONS:
            if head == "ACTION":
                parts = line.split()
                if len(parts) != 2:
                    raise ParseError("ACTION needs a generator name", line=no)
                action_header = parts[1]
            elif len(line.split()) > 1 and head != "GROUP":
                raise ParseError(f"unexpected text after {head}", line=no)
            current = sections.setdefault(head, [])
            if head == "GROUP" and len(line.split()) > 1:
                current.append((no, " ".join(line.split()[1:])))
            continue
        if current is None:
            raise ParseError(f"content before any section: {line!r}", line=no)
        current.append((no, line))

    if "VERTICES" not in sections:
        raise ParseError("missing VERTICES section")
    vertices = []
    for no, line in sections["VERTICES"]:
        for tok in line.split():
            try:
                vertices.append(Vertex(int(tok)))
            except ValueError:
                raise ParseError(f"bad vertex id {tok!r}", line=no) from None

    frozen_vertices = []
    for no, line in sections.get("FROZEN", []):
        for tok in line.split():
            try:
                frozen_vertices.append(int(tok))
            except ValueError:
                raise ParseError(f"bad frozen vertex id {tok!r}", line=no) from None

    arrows = []
    for no, line in sections.get("ARROWS", []):
        arrows.append(_parse_arrow(line, no))

    frozen_arrows = []
    for no, line in sections.get("FROZEN-ARROWS", []):
        frozen_arrows.extend(line.split())

    try:
        quiver = IceQuiver(vertices, arrows, frozen_vertices, frozen_arrows)
    except IcefoldError as exc:
        raise ParseError(f"inconsistent quiver data: {exc}") from exc

    potential = None
    if "POTENTIAL" in sections:
        terms = []
        for no, line in sections["POTENTIAL"]:
            terms.append(_parse_term(line, no))
        try:
            potential = Potential(terms, quiver)
        except IcefoldError as exc:
            raise ParseError(f"bad potential: {exc}") from exc

    action = None
    if "ACTION" in sections:
        if "GROUP" not in sections or not sections["GROUP"]:
            raise ParseError("ACTION requires a GROUP section")
        gno, gline = sections["GROUP"][0]
        gparts = gline.split()
        if len(gparts) != 2 or gparts[0].lower() != "cyclic":
            raise ParseError(f"unsupported group {gline!r}", line=gno)
        try:
            order = int(gparts[1])
        except ValueError:
            raise ParseError(f"bad group order {gparts[1]!r}", line=gno) from None
        action = _parse_action(sections["ACTION"], action_header, order, quiver)
    return QuiverFile(quiver, potential, action)


def _parse_arrow(line: str, no: int) -> GradedArrow:
    deg = 0
    if "[" in line:
        line, _, opt = line.partition("[")
        opt = opt.strip()
        if not opt.endswith("]") or not opt[:-1].startswith("deg="):
            raise ParseError(f"bad arrow option {opt!r}", line=no)
        try:
            deg = int(opt[4:-1])
        except ValueError:
            raise ParseError(f"bad degree in {opt!r}", line=no) from None
    if ":" not in line or "->" not in line:
        raise ParseError(f"arrow line must look like 'id: src -> tgt': {line!r}", line=no)
    aid, _, rest = line.partition(":")
    src, _, tgt = rest.partition("->")
    try:
        return GradedArrow(aid.strip(), int(src.strip()), int(tgt.strip()), deg)
    except ValueError:
        raise ParseError(f"bad arrow endpoints in {line!r}", line=no) from None


def _parse_term(line: str, no: int):
    if "*" not in line:
        raise ParseError(f"potential term must look like 'coeff * a.b.c': {line!r}", line=no)
    coeff, _, word = line.partition("*")
    try:
        c = Fraction(coeff.strip())
    except ValueError:
        raise ParseError(f"bad coefficient {coeff.strip()!r}", line=no) from None
    path = tuple(tok.strip() for tok in word.strip().split("."))
    if not all(path):
        raise ParseError(f"bad cycle word {word.strip()!r}", line=no)
    return (c, path)


def _parse_cycles(text: str, no: int) -> dict[int, int]:
    out: dict[int, int] = {}
    rest = text.strip()
    while rest:
        if not rest.startswith("("):
            raise ParseError(f"bad cycle notation {text!r}", line=no)
        close = rest.find(")")
        if close < 0:
            raise ParseError(f"unclosed cycle in {text!r}", line=no)
        try:
            members = [int(tok) for tok in rest[1:close].split()]
        except ValueError:
            raise ParseError(f"bad cycle members in {text!r}", line=no) from None
        for k, v in enumerate(members):
            out[v] = members[(k + 1) % len(members)]
        rest = rest[close + 1 :].strip()
    return out


def _parse_action(lines, gen_name: str, order: int, quiver: IceQuiver) -> GroupAction:
    vmap: dict[int, int] = {v: v for v in quiver.vertex_ids}
    amap: dict[str, tuple[int, str]] = {}
    for no, line in lines:
        if line.lower().startswith("vertices:"):
            cycles = _parse_cycles(line.partition(":")[2], no)
            for v, w in cycles.items():
                if v not in vmap:
                    raise ParseError(f"unknown vertex {v} in action", line=no)
                vmap[v] = w
            continue
        if "->" not in line:
            raise ParseError(f"bad action line {line!r}", line=no)
        src, _, dst = line.partition("->")
        src = src.strip()
        dst = dst.strip()
        sign = 1
        if dst.startswith("-"):
            sign = -1
            dst = dst[1:].strip()
        amap[src] = (sign, dst)
    for a in quiver.arrows:
        if a.id not in amap:
            raise ParseError(f"action gives no image for arrow {a.id!r}")
    group = FiniteGroup.cyclic(order)
    vertex_map = {"g0": {v: v for v in quiver.vertex_ids}}
    arrow_map = {"g0": {a.id: (1, a.id) for a in quiver.arrows}}
    for k in range(1, order):
        pv = vertex_map[f"g{k - 1}"]
        pa = arrow_map[f"g{k - 1}"]
        vertex_map[f"g{k}"] = {v: vmap[pv[v]] for v in quiver.vertex_ids}
        na = {}
        for a in quiver.arrows:
            s1, b = pa[a.id]
            s2, c = amap[b]
            na[a.id] = (s1 * s2, c)
        arrow_map[f"g{k}"] = na
    try:
        return GroupAction(group, quiver, vertex_map, arrow_map)
    except IcefoldError as exc:
        raise ParseError(f"declared action is not a group action: {exc}") from exc


def write_iq(
    quiver: IceQuiver,
    potential: Potential | None = None,
    action: GroupAction | None = None,
) -> str:
    lines = ["VERTICES", " ".join(str(v) for v in quiver.vertex_ids)]
    if quiver.frozen_vertices:
        lines += ["FROZEN", " ".join(str(v) for v in sorted(quiver.frozen_vertices))]
    lines.append("ARROWS")
    for a in quiver.arrows:
        opt = f" [deg={a.degree}]" if a.degree else ""
        lines.append(f"{a.id}: {a.source} -> {a.target}{opt}")
    if quiver.frozen_arrows:
        lines += ["FROZEN-ARROWS", " ".join(sorted(quiver.frozen_arrows))]
    if potential is not None and not potential.is_zero():
        lines.append("POTENTIAL")
        for c, cyc in potential.terms:
            lines.append(f"{c} * {'.'.join(cyc.arrows)}")
    if action is not None:
        order = action.group.order()
        lines += ["GROUP cyclic " + str(order), "ACTION g1"]
        gen = "g1" if order > 1 else "g0"
        vm = action.vertex_map[gen]
        cycles = []
        seen: set[int] = set()
        for v in action.quiver.vertex_ids:
            if v in seen or vm[v] == v:
                seen.add(v)
                continue
            cyc = [v]
            w = vm[v]
            while w != v:
                cyc.append(w)
                w = vm[w]
            seen.update(cyc)
            cycles.append("(" + " ".join(str(x) for x in cyc) + ")")
        lines.append("vertices: " + ("".join(cycles) if cycles else "()"))
        for a in action.quiver.arrows:
            sign, b = action.arrow_map[gen][a.id]
            lines.append(f"{a.id} -> {'-' if sign < 0 else ''}{b}")
    return "\n".join(lines) + "\n"
