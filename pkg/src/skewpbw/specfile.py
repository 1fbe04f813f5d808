"""The line-oriented algebra document format.

A document is `key = value` lines grouped under bracketed sections, with
`#` comments and a mandatory `format = 1` header line before the first
section:

    format = 1

    [ring]
    kind = poly            # rational | poly | ratfunc
    vars = y               # coefficient generators, comma separated
    param q = 2            # named rational parameters usable in expressions

    [vars]
    names = x              # algebra variables in index order
    sigma.x.y = q*y        # twist image, defaults to the generator itself
    delta.x.y = 1          # derivation image, defaults to zero

    [relations]
    x2*x1 = 2*x1*x2 + 1    # pair rule, defaults to plain commutation

    [order]
    kind = deglex          # deglex | lex
    precedence = x2, x1    # most significant first; defaults to reverse
                           # declaration order

A relation right-hand side must be written expanded, with coefficient
factors to the left of the variables and the variables in nondecreasing
declaration order; the coefficient at the product monomial is the pair
constant and the remaining terms are the tail.  Every diagnostic carries
a line and column.  `load_document` returns the algebra together with its
validation report; `parse_document` additionally raises on a failing
report.  `unparse` renders an algebra canonically (defaults omitted,
parameters inlined) and re-parses to an equal algebra.
"""

from .algebra import Algebra, MonomialOrder, ValidationReport
from .errors import ParseError, SpecValidationError
from .exprs import eval_coeff, format_coeff, format_element, parse_ast
from .rings import CoeffRing, RingMap, SigmaDerivation

_SECTIONS = ("ring", "vars", "relations", "order")
_RING_KINDS = ("rational", "poly", "ratfunc")


def _is_name(text: str) -> bool:
    return text.isidentifier()


class _Entry:
    __slots__ = ("value", "line", "col", "key_col")

    def __init__(self, value, line, col, key_col):
        self.value = value
        self.line = line
        self.col = col
        self.key_col = key_col


def _scan(text: str):
    """Split a document into header entries and per-section entry tables."""
    header = {}
    sections = {name: {} for name in _SECTIONS}
    section_lines = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        cut = raw.find("#")
        line = raw[:cut] if cut >= 0 else raw
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", lineno, indent + 1)
            name = stripped[1:-1].strip()
            if name not in _SECTIONS:
                raise ParseError(f"unknown section [{name}]", lineno, indent + 1)
            if name in section_lines:
                raise ParseError(f"duplicate section [{name}]", lineno, indent + 1)
            section_lines[name] = lineno
            current = name
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, indent + 1)
        eq = line.index("=")
        key = line[:eq].strip()
        if not key:
            raise ParseError("missing key before '='", lineno, indent + 1)
        rest = line[eq + 1:]
        col = eq + 2 + (len(rest) - len(rest.lstrip()))
        target = header if current is None else sections[current]
        if key in target:
            raise ParseError(f"duplicate key {key!r}", lineno, indent + 1)
        target[key] = _Entry(rest.strip(), lineno, col, indent + 1)
    return header, sections, section_lines


def _names_list(entry: _Entry, what: str):
    names = [piece.strip() for piece in entry.value.split(",")]
    if names == [""]:
        return []
    for name in names:
        if not _is_name(name):
            raise ParseError(f"bad {what} name {name!r}", entry.line, entry.col)
    if len(set(names)) != len(names):
        raise ParseError(f"duplicate {what} name", entry.line, entry.col)
    return names


def _coeff_value(entry: _Entry, ring, params):
    return eval_coeff(parse_ast(entry.value, entry.line, entry.col - 1), ring, params)


def _build_ring(table, section_line):
    if "kind" not in table:
        raise ParseError("missing 'kind' in [ring]", section_line, 1)
    kind_entry = table.pop("kind")
    kind = kind_entry.value
    if kind not in _RING_KINDS:
        raise ParseError(f"ring kind must be one of {', '.join(_RING_KINDS)}",
                         kind_entry.line, kind_entry.col)
    gens = []
    if "vars" in table:
        entry = table.pop("vars")
        gens = _names_list(entry, "coefficient generator")
        if kind == "rational" and gens:
            raise ParseError("rational coefficients take no generators",
                             entry.line, entry.col)
        if kind == "ratfunc" and len(gens) != 1:
            raise ParseError("rational function coefficients take exactly one generator",
                             entry.line, entry.col)
    elif kind != "rational":
        raise ParseError(f"missing 'vars' in [ring] for kind {kind!r}", section_line, 1)
    if kind != "rational" and not gens:
        raise ParseError("at least one coefficient generator is required",
                         section_line, 1)

    rational = CoeffRing.rational()
    params = {}
    for key in list(table):
        pieces = key.split(None, 1)
        if pieces[0] != "param" or len(pieces) != 2:
            continue
        entry = table.pop(key)
        name = pieces[1]
        if not _is_name(name):
            raise ParseError(f"bad parameter name {name!r}", entry.line, entry.key_col)
        if name in gens:
            raise ParseError(f"parameter {name!r} collides with a generator",
                             entry.line, entry.key_col)
        params[name] = _coeff_value(entry, rational, params)
    for key, entry in table.items():
        raise ParseError(f"unknown key {key!r} in [ring]", entry.line, entry.key_col)

    if kind == "rational":
        return rational, params
    if kind == "poly":
        return CoeffRing.poly(*gens), params
    return CoeffRing.ratfunc(gens[0]), params


def _build_vars(table, section_line, ring, params):
    if "names" not in table:
        raise ParseError("missing 'names' in [vars]", section_line, 1)
    names_entry = table.pop("names")
    varnames = _names_list(names_entry, "variable")
    if not varnames:
        raise ParseError("at least one variable is required",
                         names_entry.line, names_entry.col)
    for name in varnames:
        if name in ring.gens:
            raise ParseError(f"variable {name!r} collides with a coefficient generator",
                             names_entry.line, names_entry.col)

    sigma_images = {v: {} for v in varnames}
    delta_images = {v: {} for v in varnames}
    for key, entry in table.items():
        parts = key.split(".")
        if len(parts) != 3 or parts[0] not in ("sigma", "delta"):
            raise ParseError(f"unknown key {key!r} in [vars] "
                             "(expected sigma.<var>.<gen> or delta.<var>.<gen>)",
                             entry.line, entry.key_col)
        _, var, gen = parts
        if var not in sigma_images:
            raise ParseError(f"unknown variable {var!r}", entry.line, entry.key_col)
        if gen not in ring.gens:
            raise ParseError(f"unknown coefficient generator {gen!r}",
                             entry.line, entry.key_col)
        value = _coeff_value(entry, ring, params)
        if parts[0] == "sigma":
            sigma_images[var][gen] = value
        else:
            delta_images[var][gen] = value

    sigma = [RingMap(ring, sigma_images[v]) for v in varnames]
    delta = [SigmaDerivation(ring, s, delta_images[v])
             for v, s in zip(varnames, sigma)]
    return varnames, sigma, delta


def _node_pos(node, default):
    kind = node[0]
    if kind == "sym":
        return node[2], node[3]
    if kind == "neg":
        return _node_pos(node[1], default)
    if kind in ("add", "sub", "mul", "div"):
        pos = _node_pos(node[1], None)
        if pos is None:
            pos = _node_pos(node[2], None)
        if pos is None and kind in ("mul", "div"):
            pos = (node[3], node[4])
        return pos if pos is not None else default
    if kind == "pow":
        pos = _node_pos(node[1], None)
        return pos if pos is not None else (node[3], node[4])
    return default


def _fold_relation(ast, ring, params, varnames, line):
    """Read an expanded right-hand side as {exponent vector: coefficient}.

    Purely syntactic: each term must list coefficient factors first, then
    variables in nondecreasing declaration order, so no rewriting is needed
    to interpret the rule that defines rewriting.
    """
    n = len(varnames)
    index = {name: k for k, name in enumerate(varnames)}
    terms = []

    def split(node, sign):
        kind = node[0]
        if kind == "add":
            split(node[1], sign)
            split(node[2], sign)
        elif kind == "sub":
            split(node[1], sign)
            split(node[2], -sign)
        elif kind == "neg":
            split(node[1], -sign)
        else:
            terms.append((sign, node))

    split(ast, 1)
    out = {}
    for sign, term in terms:
        factors = []

        def flatten(node):
            if node[0] == "mul":
                flatten(node[1])
                flatten(node[2])
            else:
                factors.append(node)

        flatten(term)
        exps = [0] * n
        coeff = ring.one()
        last = -1
        for factor in factors:
            base, power = factor, 1
            if factor[0] == "pow":
                base, power = factor[1], factor[2]
            if base[0] == "sym" and base[1] in index:
                fline, fcol = base[2], base[3]
                if power < 0:
                    raise ParseError("variables take nonnegative powers in a relation",
                                     fline, fcol)
                idx = index[base[1]]
                if idx < last:
                    raise ParseError("variables must appear in nondecreasing "
                                     "declaration order", fline, fcol)
                last = idx
                exps[idx] += power
            else:
                if last >= 0:
                    fline, fcol = _node_pos(factor, (line, 1))
                    raise ParseError("coefficients must stand to the left of "
                                     "the variables", fline, fcol)
                coeff = ring.mul(coeff, eval_coeff(factor, ring, params))
        value = coeff if sign > 0 else ring.neg(coeff)
        key = tuple(exps)
        total = ring.add(out[key], value) if key in out else value
        if ring.is_zero(total):
            out.pop(key, None)
        else:
            out[key] = total
    return out


def _build_relations(table, ring, params, varnames):
    n = len(varnames)
    index = {name: k for k, name in enumerate(varnames)}
    relations = {}
    for key, entry in table.items():
        parts = [p.strip() for p in key.split("*")]
        if len(parts) != 2 or not all(p in index for p in parts):
            raise ParseError(f"relation key {key!r} must be '<later>*<earlier>' "
                             "over declared variables", entry.line, entry.key_col)
        j, i = index[parts[0]], index[parts[1]]
        if j <= i:
            raise ParseError("the left side must be a later variable times an "
                             "earlier one", entry.line, entry.key_col)
        ast = parse_ast(entry.value, entry.line, entry.col - 1)
        folded = _fold_relation(ast, ring, params, varnames, entry.line)
        pair_exp = tuple(1 if k in (i, j) else 0 for k in range(n))
        c = folded.pop(pair_exp, ring.zero())
        relations[(i, j)] = (c, folded)
    return relations


def _build_order(table, section_line, varnames):
    n = len(varnames)
    kind = "deglex"
    if "kind" in table:
        entry = table.pop("kind")
        kind = entry.value
        if kind not in ("deglex", "lex"):
            raise ParseError("order kind must be deglex or lex", entry.line, entry.col)
    precedence = None
    if "precedence" in table:
        entry = table.pop("precedence")
        names = _names_list(entry, "precedence")
        if sorted(names) != sorted(varnames):
            raise ParseError("precedence must be a permutation of the variables",
                             entry.line, entry.col)
        precedence = tuple(varnames.index(name) for name in names)
    for key, entry in table.items():
        raise ParseError(f"unknown key {key!r} in [order]", entry.line, entry.key_col)
    if kind == "deglex":
        return MonomialOrder.deglex(n, precedence)
    return MonomialOrder.lex(n, precedence)


def _build_algebra(text: str) -> Algebra:
    header, sections, section_lines = _scan(text)
    if "format" not in header:
        raise ParseError("missing 'format = 1' header", 1, 1)
    entry = header.pop("format")
    if entry.value != "1":
        raise ParseError(f"unsupported format {entry.value!r}", entry.line, entry.col)
    for key, stray in header.items():
        raise ParseError(f"unexpected key {key!r} before the first section",
                         stray.line, stray.key_col)
    if "ring" not in section_lines:
        raise ParseError("missing [ring] section", 1, 1)
    ring, params = _build_ring(dict(sections["ring"]), section_lines["ring"])
    if "vars" not in section_lines:
        raise ParseError("missing [vars] section", 1, 1)
    varnames, sigma, delta = _build_vars(dict(sections["vars"]),
                                         section_lines["vars"], ring, params)
    relations = _build_relations(sections["relations"], ring, params, varnames)
    order = None
    if "order" in section_lines:
        order = _build_order(dict(sections["order"]), section_lines["order"], varnames)
    try:
        return Algebra(ring, varnames, sigma=sigma, delta=delta,
                       relations=relations, order=order)
    except ValueError as exc:
        raise ParseError(str(exc), section_lines["vars"], 1) from None


def load_document(text: str):
    """Parse a document and validate the algebra it defines.

    Returns (algebra, report) without raising on mathematical validation
    failures, so callers can inspect the report.  Syntax problems still
    raise ParseError.
    """
    algebra = _build_algebra(text)
    return algebra, algebra.validate()


def parse_document(text: str) -> Algebra:
    """Parse a document into a validated algebra.

    Raises ParseError for syntax problems and SpecValidationError when the
    defined data fails validation.
    """
    algebra, report = load_document(text)
    if not report.ok:
        raise SpecValidationError(report)
    return algebra


def unparse(algebra: Algebra) -> str:
    """Canonical document for an algebra; re-parses to an equal algebra.

    Identity twists, zero derivations, and plain commutation relations are
    omitted; the order section is always explicit.
    """
    ring = algebra.ring
    lines = ["format = 1", "", "[ring]", f"kind = {ring.kind}"]
    if ring.gens:
        lines.append(f"vars = {', '.join(ring.gens)}")
    lines += ["", "[vars]", f"names = {', '.join(algebra.varnames)}"]
    for i, name in enumerate(algebra.varnames):
        twist = algebra.sigma[i]
        for gen in ring.gens:
            image = twist.images[gen]
            if not ring.eq(image, ring.gen(gen)):
                lines.append(f"sigma.{name}.{gen} = {format_coeff(ring, image)}")
    for i, name in enumerate(algebra.varnames):
        derivation = algebra.delta[i]
        for gen in ring.gens:
            image = derivation.images[gen]
            if not ring.is_zero(image):
                lines.append(f"delta.{name}.{gen} = {format_coeff(ring, image)}")
    relation_lines = []
    for (i, j), (c, tail) in sorted(algebra.relations.items()):
        if ring.eq(c, ring.one()) and not tail:
            continue
        pair_exp = tuple(1 if k in (i, j) else 0 for k in range(algebra.n))
        rhs = algebra.element({**tail, pair_exp: c})
        relation_lines.append(f"{algebra.varnames[j]}*{algebra.varnames[i]}"
                              f" = {format_element(rhs)}")
    if relation_lines:
        lines += ["", "[relations]"] + relation_lines
    precedence = ", ".join(algebra.varnames[k] for k in algebra.order.precedence)
    lines += ["", "[order]", f"kind = {algebra.order.kind}",
              f"precedence = {precedence}", ""]
    return "\n".join(lines)
