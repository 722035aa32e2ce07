"""Text file grammars for fans, piecewise-linear maps, pairs, presentations.

All formats are line based: '#' starts a comment, blank lines are ignored,
fields are whitespace separated.  Parse problems raise ParseError with the
1-based line number.  The grammars are stable; serializers below emit
byte-stable output for identical input.

Fan file:            dim N / rays / <ints per line> / max_cones / <indices>
Pair file:           fan file + charmap / <ints per line, one per ray>
Phi file:            fiber_rank N / values / <ray_index ints...> per base ray
Base presentation:   name / top_degree / generators (name degree) /
                     relations (one polynomial per line) / basis
                     (degree : monomial list) / integration +-1 / chern poly
Twisting classes:    classes / one degree-2 polynomial per fiber coordinate
"""

from __future__ import annotations

from .bundlering import BasePresentation, TwistingClasses
from .cohomology import Poly
from .fan import Fan, make_fan
from .twist import CharacteristicPair, PiecewiseLinearMap, validate_pair


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _lines(text: str):
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {line!r}") from None


class _Cursor:
    def __init__(self, text: str):
        self.lines = _lines(text)
        self.pos = 0

    def done(self) -> bool:
        return self.pos >= len(self.lines)

    def peek(self):
        return self.lines[self.pos]

    def take(self):
        if self.done():
            raise ParseError(
                self.lines[-1][0] if self.lines else 1, "unexpected end of file"
            )
        item = self.lines[self.pos]
        self.pos += 1
        return item

    def expect_keyword(self, keyword: str):
        lineno, line = self.take()
        parts = line.split()
        if parts[0] != keyword:
            raise ParseError(lineno, f"expected {keyword!r}, got {parts[0]!r}")
        return lineno, parts[1:]

    def block_until(self, keywords):
        """All lines up to the next line starting with one of the keywords."""
        rows = []
        while not self.done():
            lineno, line = self.peek()
            if line.split()[0] in keywords:
                break
            rows.append(self.take())
        return rows


def _parse_fan_sections(cur: _Cursor, stop_keywords=()):
    lineno, rest = cur.expect_keyword("dim")
    if len(rest) != 1:
        raise ParseError(lineno, "dim takes exactly one integer")
    dim = _ints(rest[0], lineno)[0]
    cur.expect_keyword("rays")
    ray_rows = cur.block_until({"max_cones"})
    rays = []
    for lineno, line in ray_rows:
        entries = _ints(line, lineno)
        if len(entries) != dim:
            raise ParseError(lineno, f"ray needs {dim} coordinates")
        rays.append(entries)
    cur.expect_keyword("max_cones")
    cone_rows = cur.block_until(set(stop_keywords))
    cones = []
    for lineno, line in cone_rows:
        indices = _ints(line, lineno)
        if any(i < 0 or i >= len(rays) for i in indices):
            raise ParseError(lineno, "cone has out-of-range ray indices")
        cones.append(indices)
    try:
        return make_fan(dim, rays, cones)
    except ValueError as exc:
        raise ParseError(lineno if cone_rows else 1, str(exc)) from None


def parse_fan(text: str) -> Fan:
    cur = _Cursor(text)
    fan = _parse_fan_sections(cur)
    if not cur.done():
        raise ParseError(cur.peek()[0], f"unexpected content {cur.peek()[1]!r}")
    return fan


def fan_to_text(f: Fan, header: str = "") -> str:
    out = []
    if header:
        out.append(f"# {header}")
    out.append(f"dim {f.dim}")
    out.append("rays")
    for ray in f.rays:
        out.append(" ".join(str(e) for e in ray))
    out.append("max_cones")
    for cone in f.max_cones:
        out.append(" ".join(str(i) for i in sorted(cone)))
    return "\n".join(out) + "\n"


def parse_pair(text: str) -> CharacteristicPair:
    cur = _Cursor(text)
    fan = _parse_fan_sections(cur, stop_keywords=("charmap",))
    cur.expect_keyword("charmap")
    rows = cur.block_until(set())
    charmap = []
    for lineno, line in rows:
        entries = _ints(line, lineno)
        if len(entries) != fan.dim:
            raise ParseError(lineno, f"charmap value needs {fan.dim} coordinates")
        charmap.append(tuple(entries))
    if len(charmap) != fan.ray_count:
        raise ParseError(
            rows[-1][0] if rows else 1,
            f"charmap has {len(charmap)} values for {fan.ray_count} rays",
        )
    pair = CharacteristicPair(complex=fan, charmap=tuple(charmap))
    validate_pair(pair)
    return pair


def pair_to_text(p: CharacteristicPair, header: str = "") -> str:
    out = fan_to_text(p.complex, header).rstrip("\n")
    lines = [out, "charmap"]
    for value in p.charmap:
        lines.append(" ".join(str(e) for e in value))
    return "\n".join(lines) + "\n"


def parse_plmap(text: str, base: Fan) -> PiecewiseLinearMap:
    cur = _Cursor(text)
    lineno, rest = cur.expect_keyword("fiber_rank")
    if len(rest) != 1:
        raise ParseError(lineno, "fiber_rank takes exactly one integer")
    rank = _ints(rest[0], lineno)[0]
    cur.expect_keyword("values")
    values: dict[int, tuple] = {}
    while not cur.done():
        lineno, line = cur.take()
        entries = _ints(line, lineno)
        if len(entries) != rank + 1:
            raise ParseError(
                lineno, f"expected a ray index and {rank} coordinates"
            )
        idx = entries[0]
        if idx < 0 or idx >= base.ray_count:
            raise ParseError(lineno, f"ray index {idx} out of range")
        if idx in values:
            raise ParseError(lineno, f"duplicate value for ray {idx}")
        values[idx] = tuple(entries[1:])
    if len(values) != base.ray_count:
        raise ParseError(1, f"phi must assign a value to all {base.ray_count} rays")
    return PiecewiseLinearMap(
        fiber_rank=rank,
        values=tuple(values[i] for i in range(base.ray_count)),
    )


def plmap_to_text(phi: PiecewiseLinearMap, header: str = "") -> str:
    out = []
    if header:
        out.append(f"# {header}")
    out.append(f"fiber_rank {phi.fiber_rank}")
    out.append("values")
    for i, value in enumerate(phi.values):
        out.append(" ".join([str(i)] + [str(e) for e in value]))
    return "\n".join(out) + "\n"


def parse_polynomial(s: str, generators: dict[str, int], nvars: int,
                     lineno: int = 1) -> Poly:
    """Parse '3*h^2 - 2*h*k + 1' style integer polynomials."""
    poly: Poly = {}
    normalized = s.replace("-", "+-")
    for chunk in normalized.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:].strip()
        coeff = sign
        exps = [0] * nvars
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise ParseError(lineno, f"empty factor in {s!r}")
            if factor[0].isdigit():
                try:
                    coeff *= int(factor)
                except ValueError:
                    raise ParseError(lineno, f"bad coefficient {factor!r}") from None
            else:
                name, _, power = factor.partition("^")
                if name not in generators:
                    raise ParseError(lineno, f"unknown generator {name!r}")
                try:
                    e = int(power) if power else 1
                except ValueError:
                    raise ParseError(lineno, f"bad exponent {power!r}") from None
                if e < 0:
                    raise ParseError(lineno, "negative exponents not allowed")
                exps[generators[name]] += e
        key = tuple(exps)
        poly[key] = poly.get(key, 0) + coeff
    return {k: v for k, v in poly.items() if v}


def polynomial_to_text(poly: Poly, names) -> str:
    if not poly:
        return "0"
    bits = []
    for exps, coeff in sorted(poly.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        factors = [
            names[i] + (f"^{e}" if e > 1 else "")
            for i, e in enumerate(exps)
            if e
        ]
        mono = "*".join(factors) if factors else "1"
        if factors and coeff == 1:
            bits.append(mono)
        elif factors and coeff == -1:
            bits.append(f"-{mono}")
        elif factors:
            bits.append(f"{coeff}*{mono}")
        else:
            bits.append(str(coeff))
    out = bits[0]
    for b in bits[1:]:
        out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
    return out


def parse_base_presentation(text: str) -> BasePresentation:
    cur = _Cursor(text)
    lineno, rest = cur.expect_keyword("name")
    name = " ".join(rest) if rest else ""
    lineno, rest = cur.expect_keyword("top_degree")
    if len(rest) != 1:
        raise ParseError(lineno, "top_degree takes exactly one integer")
    top = _ints(rest[0], lineno)[0]
    cur.expect_keyword("generators")
    generators = []
    gen_index: dict[str, int] = {}
    for lineno, line in cur.block_until({"relations"}):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, "generator lines are: name degree")
        gname, degree = parts[0], _ints(parts[1], lineno)[0]
        if gname in gen_index:
            raise ParseError(lineno, f"duplicate generator {gname!r}")
        gen_index[gname] = len(generators)
        generators.append((gname, degree))
    nvars = len(generators)
    cur.expect_keyword("relations")
    relations = []
    for lineno, line in cur.block_until({"basis"}):
        relations.append(parse_polynomial(line, gen_index, nvars, lineno))
    cur.expect_keyword("basis")
    basis: dict[int, list] = {}
    for lineno, line in cur.block_until({"integration"}):
        if ":" not in line:
            raise ParseError(lineno, "basis lines are: degree : monomials")
        left, right = line.split(":", 1)
        degree = _ints(left, lineno)[0]
        if degree % 2:
            raise ParseError(lineno, "basis degrees must be even")
        monos = []
        for token in right.split():
            term = parse_polynomial(token, gen_index, nvars, lineno)
            if len(term) != 1 or set(term.values()) != {1}:
                raise ParseError(lineno, f"{token!r} is not a monomial")
            monos.append(next(iter(term)))
        basis[degree // 2] = monos
    lineno, rest = cur.expect_keyword("integration")
    if len(rest) != 1:
        raise ParseError(lineno, "integration takes exactly one integer")
    integration = _ints(rest[0], lineno)[0]
    cur.expect_keyword("chern")
    chern: Poly = {}
    for lineno, line in cur.block_until(set()):
        for k, v in parse_polynomial(line, gen_index, nvars, lineno).items():
            chern[k] = chern.get(k, 0) + v
    return BasePresentation(
        name=name,
        generators=generators,
        relations=relations,
        basis=basis,
        top_degree=top,
        integration=integration,
        chern=chern,
    )


def parse_twisting(text: str, base: BasePresentation) -> TwistingClasses:
    cur = _Cursor(text)
    cur.expect_keyword("classes")
    gen_index = {g: i for i, (g, _) in enumerate(base.generators)}
    classes = []
    for lineno, line in cur.block_until(set()):
        poly = parse_polynomial(line, gen_index, len(base.generators), lineno)
        classes.append(base.reduce_poly(poly))
    return TwistingClasses(classes=tuple(classes))
