"""Line-oriented exact text format for bigraded complexes.

Blocks: [meta] (name, variance, dimension), [dims] (triples "p q dim"),
[del], [delbar], [sigma] (matrix blocks headed "block p q", keyed by the
source bidegree, one row per line, entries exact Gaussian-rational
literals like 1/2+3/4*i).  Bidegrees in the file are user-facing (negated
internally for cohomological complexes).  No floats are accepted anywhere;
serialization is canonical (sorted blocks, zero matrices omitted), so
parse/serialize round-trips byte-identically on canonical files.
"""

from .exactnum import QI, Matrix, format_scalar, parse_scalar
from .dolbeault import BigradedComplex, COHOMOLOGICAL, HOMOLOGICAL, validate_dolbeault


class ParseError(Exception):
    def __init__(self, line, message):
        super().__init__("line %d: %s" % (line, message))
        self.line = line
        self.message = message


class ValidationError(Exception):
    def __init__(self, report):
        super().__init__("; ".join(repr(v) for v in report))
        self.report = report


SECTIONS = ("meta", "dims", "del", "delbar", "sigma")

# user-facing bidegree shifts of the three matrix families
SHIFTS = {"del": (-1, 0), "delbar": (0, -1)}


def parse_complex_file(text, validate=True):
    """Parse the declared format into a validated BigradedComplex.

    Raises ParseError (with the line number) on malformed input and
    ValidationError (with the embedded report) when the complex violates
    the structural identities.
    """
    meta = {}
    dims = {}
    mats = {"del": {}, "delbar": {}, "sigma": {}}
    section = None
    block_key = None
    block_rows = []
    section_of_block = None

    def close_block(lineno):
        if block_key is None:
            return
        mats[section_of_block][block_key] = block_rows[:]

    lines = text.splitlines()
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            close_block(lineno)
            block_key = None
            block_rows = []
            section = line[1:-1].strip()
            if section not in SECTIONS:
                raise ParseError(lineno, "unknown section %r" % section)
            continue
        if section is None:
            raise ParseError(lineno, "content before any section")
        if section == "meta":
            if "=" not in line:
                raise ParseError(lineno, "meta lines need key = value")
            key, val = [x.strip() for x in line.split("=", 1)]
            meta[key] = val
        elif section == "dims":
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(lineno, "dims lines are 'p q dim'")
            try:
                p, q, d = int(parts[0]), int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(lineno, "dims entries must be integers")
            if d < 0:
                raise ParseError(lineno, "negative dimension")
            if d:
                dims[(p, q)] = d
        else:
            if line.startswith("block"):
                close_block(lineno)
                parts = line.split()
                if len(parts) != 3:
                    raise ParseError(lineno, "block lines are 'block p q'")
                try:
                    block_key = (int(parts[1]), int(parts[2]))
                except ValueError:
                    raise ParseError(lineno, "block bidegree must be integers")
                block_rows = []
                section_of_block = section
            else:
                if block_key is None:
                    raise ParseError(lineno, "matrix row outside a block")
                row = []
                for tok in line.split():
                    try:
                        row.append(parse_scalar(tok.replace("\u00b7", "*")))
                    except ValueError as exc:
                        raise ParseError(lineno, "bad entry %r (%s)" % (tok, exc))
                block_rows.append(row)
    close_block(len(lines))

    variance = meta.get("variance", "homological")
    if variance not in (HOMOLOGICAL, COHOMOLOGICAL):
        raise ParseError(0, "variance must be homological or cohomological")
    neg = variance == COHOMOLOGICAL

    def internal(pq):
        return (-pq[0], -pq[1]) if neg else pq

    support = {internal(pq): d for pq, d in dims.items()}

    def shaped(kind, pq_user, rows, tgt_user):
        src_dim = dims.get(pq_user, 0)
        tgt_dim = dims.get(tgt_user, 0)
        m = Matrix.zeros(tgt_dim, src_dim, QI)
        if not rows:
            return m
        if len(rows) != tgt_dim or any(len(r) != src_dim for r in rows):
            raise ParseError(0, "%s block %s: expected %dx%d matrix"
                             % (kind, pq_user, tgt_dim, src_dim))
        return Matrix.from_rows(rows, src_dim or 0, QI) if src_dim else m

    del_maps, delbar_maps, sigma_maps = {}, {}, {}
    for kind, store in (("del", del_maps), ("delbar", delbar_maps)):
        shift = SHIFTS[kind]
        ushift = (-shift[0], -shift[1]) if neg else shift
        for pq_user, rows in mats[kind].items():
            if pq_user not in dims:
                raise ParseError(0, "%s block %s: source bidegree not declared"
                                 % (kind, pq_user))
            tgt_user = (pq_user[0] + ushift[0], pq_user[1] + ushift[1])
            m = shaped(kind, pq_user, rows, tgt_user)
            if m.rows and m.cols:
                store[internal(pq_user)] = m
    for pq_user, rows in mats["sigma"].items():
        if pq_user not in dims:
            raise ParseError(0, "sigma block %s: source bidegree not declared"
                             % (pq_user,))
        tgt_user = (pq_user[1], pq_user[0])
        m = shaped("sigma", pq_user, rows, tgt_user)
        if m.rows and m.cols:
            sigma_maps[internal(pq_user)] = m

    dimension = meta.get("dimension")
    geom_dim = int(dimension) if dimension not in (None, "", "none") else None
    cx = BigradedComplex(support, del_maps, delbar_maps, sigma_maps,
                         variance=variance, name=meta.get("name", ""),
                         geom_dim=geom_dim)
    if validate:
        report = validate_dolbeault(cx)
        if report:
            raise ValidationError(report)
    return cx


def serialize_complex(cx):
    """Canonical text form: sorted sections and blocks, zero matrices and
    empty blocks omitted, exact literals."""
    out = ["[meta]"]
    if cx.name:
        out.append("name = %s" % cx.name)
    out.append("variance = %s" % cx.variance)
    if cx.geom_dim is not None:
        out.append("dimension = %d" % cx.geom_dim)
    out.append("")
    out.append("[dims]")
    for pq, d in sorted(cx.user_support().items()):
        out.append("%d %d %d" % (pq[0], pq[1], d))
    for kind, maps in (("del", cx.del_maps), ("delbar", cx.delbar_maps),
                       ("sigma", cx.sigma_maps)):
        rows_out = []
        for pq_int, m in sorted(maps.items(),
                                key=lambda kv: cx.to_user_bidegree(*kv[0])):
            if m.is_zero():
                continue
            pq_user = cx.to_user_bidegree(*pq_int)
            rows_out.append("block %d %d" % pq_user)
            for row in m.data:
                rows_out.append(" ".join(format_scalar(x) for x in row))
        if rows_out:
            out.append("")
            out.append("[%s]" % kind)
            out.extend(rows_out)
    return "\n".join(out) + "\n"
