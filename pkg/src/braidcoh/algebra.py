"""Finitely presented Z-graded algebras with exact rational coefficients.

A presentation consists of generators with positive internal degrees, a set
of homogeneous rewrite rules oriented by the degree-lexicographic order, and
the images of the generators under the algebra automorphism t (and its
inverse).  Elements are sparse linear combinations of normal-form words; a
word is a tuple of generator ids and the empty tuple is the unit monomial.

Rewriting is leftmost-innermost and memoized per word.  When the rule set is
confluent (checked by :func:`complete_overlaps`, a diamond-lemma overlap
scan) the normal form is independent of strategy and the irreducible words
of each degree form a basis of the graded piece.
"""

from dataclasses import dataclass, field

from .errors import NotConfluentError, PresentationError, TruncationError
from .lincomb import add_inplace, add_term
from .scalars import QQ, format_rational, parse_rational

_MISSING = object()


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


class Presentation:
    """A finitely presented graded algebra together with its t-action.

    ``rules`` maps a leading word to the element it rewrites to; every rule
    must be homogeneous and strictly decreasing for the degree-lex order
    induced by ``order`` (generator precedence, smallest first).
    """

    def __init__(self, generators, rules, t_images, t_inverse_images,
                 order=None, truncation=None, name=""):
        self.generators = tuple(generators)
        self.name = name
        self.truncation = truncation
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator names")
        if any(g.degree < 1 for g in self.generators):
            raise PresentationError("generator degrees must be >= 1")
        self.id_of = {g.name: i for i, g in enumerate(self.generators)}
        self.degrees = tuple(g.degree for g in self.generators)

        if order is None:
            order = names
        if sorted(order) != sorted(names):
            raise PresentationError("order must list every generator once")
        self._rank = [0] * len(self.generators)
        for pos, nm in enumerate(order):
            self._rank[self.id_of[nm]] = pos
        self.order = tuple(order)

        self.rules = []
        seen_lhs = set()
        for lhs, rhs in rules:
            lhs = tuple(lhs)
            self.check_word(lhs)
            if lhs in seen_lhs:
                raise PresentationError(
                    f"duplicate rule for {self.format_word(lhs)}")
            seen_lhs.add(lhs)
            rhs = {tuple(w): QQ(c) for w, c in rhs.items() if c}
            for w in rhs:
                self.check_word(w)
            dl = self.degree_of(lhs)
            for w in rhs:
                if self.degree_of(w) != dl:
                    raise PresentationError(
                        f"rule {self.format_word(lhs)} is not homogeneous")
                if self.word_key(w) >= self.word_key(lhs):
                    raise PresentationError(
                        f"rule for {self.format_word(lhs)} does not decrease "
                        "the monomial order")
            self.rules.append((lhs, rhs))

        def img_map(raw, what):
            out = {}
            for nm, elem in raw.items():
                if nm not in self.id_of:
                    raise PresentationError(f"unknown generator {nm!r} in {what}")
                g = self.id_of[nm]
                e = {tuple(w): QQ(c) for w, c in elem.items() if c}
                for w in e:
                    if self.degree_of(w) != self.degrees[g]:
                        raise PresentationError(f"{what} of {nm} changes degree")
                out[g] = e
            if len(out) != len(self.generators):
                raise PresentationError(f"{what} must cover every generator")
            return out

        self.t_images = img_map(t_images, "t action")
        self.t_inverse_images = img_map(t_inverse_images, "t inverse")

        self._nf_cache = {}
        self._act_cache = {}
        self._basis_cache = {}
        self._coproduct_cache = {}
        self._bimonoid_ok = None
        self._confluence_report = None

        for g in range(len(self.generators)):
            gw = (g,)
            if self.act(1, self.act(-1, {gw: QQ(1)})) != {gw: QQ(1)} or \
               self.act(-1, self.act(1, {gw: QQ(1)})) != {gw: QQ(1)}:
                raise PresentationError(
                    f"t and t^-1 are not inverse on {self.generators[g].name}")

    # -- words ---------------------------------------------------------

    def degree_of(self, word):
        degs = self.degrees
        return sum(degs[g] for g in word)

    def word_key(self, word):
        """Degree-lexicographic sort key (a monomial well-order)."""
        rank = self._rank
        return (self.degree_of(word), tuple(rank[g] for g in word))

    def check_word(self, word):
        n = len(self.generators)
        for g in word:
            if not 0 <= g < n:
                raise PresentationError(f"unknown generator id {g}")

    # -- rewriting -----------------------------------------------------

    def _first_redex(self, word):
        for i in range(len(word)):
            for lhs, rhs in self.rules:
                if word[i:i + len(lhs)] == lhs:
                    return i, lhs, rhs
        return None

    def _nf_word(self, word):
        """Fully reduce a single word; returns an element, memoized."""
        cached = self._nf_cache.get(word, _MISSING)
        if cached is not _MISSING:
            return {word: QQ(1)} if cached is None else cached
        if self.truncation is not None and self.degree_of(word) > self.truncation:
            raise TruncationError(
                f"word of degree {self.degree_of(word)} exceeds truncation "
                f"{self.truncation}")
        hit = self._first_redex(word)
        if hit is None:
            self._nf_cache[word] = None
            return {word: QQ(1)}
        i, lhs, rhs = hit
        head, tail = word[:i], word[i + len(lhs):]
        out = {}
        for w, c in rhs.items():
            add_inplace(out, self._nf_word(head + w + tail), c)
        self._nf_cache[word] = out
        return out

    def normal_form(self, raw):
        """Rewrite a raw combination {word: coeff} to normal form."""
        out = {}
        for w, c in raw.items():
            w = tuple(w)
            self.check_word(w)
            if c:
                add_inplace(out, self._nf_word(w), QQ(c))
        return out

    def is_normal(self, elem):
        return all(self._first_redex(w) is None for w in elem)

    def mul_words(self, a, b):
        return self._nf_word(a + b)

    def multiply(self, x, y):
        out = {}
        for wa, ca in x.items():
            for wb, cb in y.items():
                add_inplace(out, self._nf_word(wa + wb), ca * cb)
        return out

    def one(self):
        return {(): QQ(1)}

    @staticmethod
    def augment(elem):
        """Coefficient of the unit monomial (the counit/augmentation)."""
        return elem.get((), QQ(0))

    def element_degrees(self, elem):
        return sorted({self.degree_of(w) for w in elem})

    def homogeneous_parts(self, elem):
        parts = {}
        for w, c in elem.items():
            parts.setdefault(self.degree_of(w), {})[w] = c
        return parts

    # -- t action ------------------------------------------------------

    def act_word(self, k, word):
        if k == 0:
            return {word: QQ(1)}
        key = (k, word)
        cached = self._act_cache.get(key)
        if cached is not None:
            return cached
        step = 1 if k > 0 else -1
        images = self.t_images if k > 0 else self.t_inverse_images
        out = {(): QQ(1)}
        for g in word:
            out = self.multiply(out, images[g])
        if k != step:
            nxt = {}
            for w, c in out.items():
                add_inplace(nxt, self.act_word(k - step, w), c)
            out = nxt
        self._act_cache[key] = out
        return out

    def act(self, k, elem):
        """Apply the automorphism t^k (k may be negative)."""
        if k == 0:
            return dict(elem)
        out = {}
        for w, c in elem.items():
            add_inplace(out, self.act_word(k, w), c)
        return out

    # -- graded basis --------------------------------------------------

    def graded_basis(self, n):
        """All irreducible words of internal degree n, in order."""
        if n < 0:
            return []
        cached = self._basis_cache.get(n)
        if cached is not None:
            return cached
        if n == 0:
            basis = [()]
        else:
            seen = []
            for g, gen in enumerate(self.generators):
                if gen.degree > n:
                    continue
                for w in self.graded_basis(n - gen.degree):
                    cand = w + (g,)
                    # a new redex can only appear as a suffix
                    if any(cand[len(cand) - len(lhs):] == lhs
                           for lhs, _ in self.rules if len(lhs) <= len(cand)):
                        continue
                    seen.append(cand)
            basis = sorted(seen, key=self.word_key)
        self._basis_cache[n] = basis
        return basis

    def dimension(self, n):
        return len(self.graded_basis(n))

    # -- confluence ----------------------------------------------------

    def ensure_confluent(self):
        if self._confluence_report is None:
            bound = max((self.degree_of(l1) + self.degree_of(l2)
                         for l1, _ in self.rules for l2, _ in self.rules),
                        default=0)
            self._confluence_report = complete_overlaps(self, bound)
        if not self._confluence_report.confluent:
            raise NotConfluentError(self._confluence_report)
        return self._confluence_report

    # -- formatting ----------------------------------------------------

    def format_word(self, word):
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.generators[word[i]].name
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    def format_element(self, elem):
        if not elem:
            return "0"
        words = sorted(elem, key=self.word_key, reverse=True)
        out = []
        for w in words:
            c = elem[w]
            sign = "-" if c < 0 else "+"
            c = -c if c < 0 else c
            body = self.format_word(w)
            if c != 1 or not w:
                cs = format_rational(c)
                body = cs if not w else f"{cs}*{body}"
            if not out:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    def parse_word(self, text):
        """Parse a word written with optional '*' separators and '^' powers."""
        word = []
        for chunk in _split_word(text):
            if "^" in chunk:
                nm, _, p = chunk.partition("^")
                power = int(p)
            else:
                nm, power = chunk, 1
            if nm == "1" and power == 1:
                continue
            if nm not in self.id_of:
                raise PresentationError(f"unknown generator {nm!r}")
            word.extend([self.id_of[nm]] * power)
        return tuple(word)

    def parse_element(self, text):
        return _ExprParser(self, text).parse()

    def __repr__(self):
        return f"Presentation({self.name or ','.join(g.name for g in self.generators)})"


def _split_word(text):
    text = text.strip()
    if not text:
        return []
    if "*" in text:
        return [tok.strip() for tok in text.split("*") if tok.strip()]
    # no separators: greedy single-token scan ("x^2y" style not allowed,
    # but "xy" over single-letter names is)
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        i += 1
        if ch.isspace():
            continue
        if i < len(text) and text[i] == "^":
            j = i + 1
            while j < len(text) and (text[j].isdigit() or text[j] == "-"):
                j += 1
            out.append(ch + text[i:j])
            i = j
        else:
            out.append(ch)
    return out


class _ExprParser:
    """Recursive-descent parser for '+', '-', '*', '^', rationals, names."""

    def __init__(self, pres, text):
        self.p = pres
        self.toks = self._lex(text)
        self.pos = 0

    @staticmethod
    def _lex(text):
        toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "+-*^()":
                toks.append(ch)
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and (text[j].isdigit() or text[j] == "/"):
                    j += 1
                toks.append(text[i:j])
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                toks.append(text[i:j])
                i = j
            else:
                raise PresentationError(f"bad character {ch!r} in expression")
        return toks

    def _peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self):
        e = self._expr()
        if self._peek() is not None:
            raise PresentationError(f"trailing input at {self._peek()!r}")
        return self.p.normal_form(e)

    def _expr(self):
        sign = QQ(1)
        while self._peek() in ("+", "-"):
            if self._next() == "-":
                sign = -sign
        out = _scale(self._term(), sign)
        while self._peek() in ("+", "-"):
            sign = QQ(1)
            while self._peek() in ("+", "-"):
                if self._next() == "-":
                    sign = -sign
            add_inplace(out, self._term(), sign)
        return out

    def _term(self):
        out = self._factor()
        while self._peek() == "*" or (self._peek() not in (None, "+", "-", ")")):
            if self._peek() == "*":
                self._next()
            nxt = self._factor()
            out = _raw_mul(out, nxt)
        return out

    def _factor(self):
        base = self._atom()
        if self._peek() == "^":
            self._next()
            tok = self._next()
            if tok is None or not tok.lstrip("-").isdigit():
                raise PresentationError("expected integer exponent")
            n = int(tok)
            if n < 0:
                raise PresentationError("negative exponents are not allowed")
            out = {(): QQ(1)}
            for _ in range(n):
                out = _raw_mul(out, base)
            return out
        return base

    def _atom(self):
        tok = self._next()
        if tok is None:
            raise PresentationError("unexpected end of expression")
        if tok == "(":
            e = self._expr()
            if self._next() != ")":
                raise PresentationError("missing ')'")
            return e
        if tok[0].isdigit():
            return {(): parse_rational(tok)}
        if tok in self.p.id_of:
            return {(self.p.id_of[tok],): QQ(1)}
        raise PresentationError(f"unknown name {tok!r}")


def _scale(e, c):
    return {w: c * v for w, v in e.items()} if c else {}


def _raw_mul(a, b):
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            add_term(out, wa + wb, ca * cb)
    return out


# -- diamond lemma ------------------------------------------------------

@dataclass
class Ambiguity:
    word: tuple
    rule_left: int
    rule_right: int
    kind: str               # "overlap" or "inclusion"
    resolves: bool
    residual: dict = field(default_factory=dict)


@dataclass
class CompletionReport:
    max_degree: int
    ambiguities: list
    confluent: bool

    def summary(self):
        bad = [a for a in self.ambiguities if not a.resolves]
        return (f"{len(self.ambiguities)} ambiguities, "
                f"{len(bad)} unresolved (degree <= {self.max_degree})")

    def failures(self):
        return [a for a in self.ambiguities if not a.resolves]


def complete_overlaps(pres, max_degree):
    """Enumerate all overlap/inclusion ambiguities and reduce both branches.

    Every ambiguity word has degree at most deg(lhs1)+deg(lhs2), so the scan
    is finite; max_degree only filters which ambiguities are reported and
    must be at least the largest rule degree.  A non-resolving ambiguity is
    reported, never repaired: silently completing the rule set would change
    the algebra the user asked for.
    """
    if pres.rules and max_degree < max(pres.degree_of(l) for l, _ in pres.rules):
        raise PresentationError("max_degree below the largest rule degree")
    found = []
    for i, (l1, r1) in enumerate(pres.rules):
        for j, (l2, r2) in enumerate(pres.rules):
            # proper overlaps: a suffix of l1 is a prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[len(l1) - k:] != l2[:k]:
                    continue
                word = l1 + l2[k:]
                if pres.degree_of(word) > max_degree:
                    continue
                left = {}
                for w, c in r1.items():
                    add_inplace(left, pres._nf_word(w + l2[k:]), c)
                right = {}
                for w, c in r2.items():
                    add_inplace(right, pres._nf_word(l1[:len(l1) - k] + w), c)
                add_inplace(left, right, QQ(-1))
                found.append(Ambiguity(word, i, j, "overlap", not left, left))
            # inclusions: l2 occurs strictly inside l1
            if i != j and len(l2) < len(l1):
                for pos in range(len(l1) - len(l2) + 1):
                    if l1[pos:pos + len(l2)] != l2:
                        continue
                    if pres.degree_of(l1) > max_degree:
                        continue
                    left = dict(r1)
                    right = {}
                    for w, c in r2.items():
                        add_inplace(right,
                                    pres._nf_word(l1[:pos] + w + l1[pos + len(l2):]),
                                    c)
                    diff = dict(left)
                    add_inplace(diff, right, QQ(-1))
                    found.append(Ambiguity(l1, i, j, "inclusion", not diff, diff))
    return CompletionReport(max_degree, found, all(a.resolves for a in found))


# -- built-in presentations ---------------------------------------------

def jordan(truncation=None):
    """The Jordan plane k<x,y>/(yx - xy + x^2/2) with t.x = x, t.y = x+y."""
    x, y = (0,), (1,)
    return Presentation(
        generators=[Generator("x", 1), Generator("y", 1)],
        rules=[(y + x, {x + y: QQ(1), x + x: QQ(-1, 2)})],
        t_images={"x": {x: QQ(1)}, "y": {x: QQ(1), y: QQ(1)}},
        t_inverse_images={"x": {x: QQ(1)}, "y": {y: QQ(1), x: QQ(-1)}},
        order=["x", "y"],
        truncation=truncation,
        name="jordan",
    )


def super_jordan(truncation=None):
    """The super Jordan plane k<x,y>/(x^2, y^2x - xy^2 - xyx)."""
    x, y = (0,), (1,)
    return Presentation(
        generators=[Generator("x", 1), Generator("y", 1)],
        rules=[
            (x + x, {}),
            (y + y + x, {x + y + y: QQ(1), x + y + x: QQ(1)}),
        ],
        t_images={"x": {x: QQ(-1)}, "y": {x: QQ(1), y: QQ(-1)}},
        t_inverse_images={"x": {x: QQ(-1)}, "y": {x: QQ(-1), y: QQ(-1)}},
        order=["x", "y"],
        truncation=truncation,
        name="super-jordan",
    )


BUILTIN_PRESENTATIONS = {"jordan": jordan, "super-jordan": super_jordan}


# -- presentation files ---------------------------------------------------

def presentation_to_json(p):
    def elem(e):
        return [{"word": p.format_word(w), "coeff": format_rational(c)}
                for w, c in sorted(e.items(), key=lambda kv: p.word_key(kv[0]))]

    return {
        "generators": [{"name": g.name, "degree": g.degree}
                       for g in p.generators],
        "order": list(p.order),
        "rules": [{"lhs": p.format_word(lhs), "rhs": elem(rhs)}
                  for lhs, rhs in p.rules],
        "t_action": {g.name: elem(p.t_images[i])
                     for i, g in enumerate(p.generators)},
        "t_inverse": {g.name: elem(p.t_inverse_images[i])
                      for i, g in enumerate(p.generators)},
    }


def presentation_from_json(data, truncation=None, check_confluence=True,
                           name="user"):
    """Build a presentation from its JSON form, rejecting non-confluent
    rule sets by default (silent completion would change the algebra)."""
    import json as _json
    from .errors import SchemaError
    if isinstance(data, str):
        data = _json.loads(data)
    try:
        gens = [Generator(g["name"], int(g["degree"]))
                for g in data["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad generators section: {exc}") from None
    order = data.get("order") or [g.name for g in gens]
    # a standalone name->word parser (the Presentation does not exist yet)
    id_of = {g.name: i for i, g in enumerate(gens)}

    def parse_w(text):
        word = []
        for chunk in _split_word(text):
            nm, _, pw = chunk.partition("^")
            power = int(pw) if pw else 1
            if nm == "1":
                continue
            if nm not in id_of:
                raise SchemaError(f"unknown generator {nm!r} in word {text!r}")
            word.extend([id_of[nm]] * power)
        return tuple(word)

    def parse_elem(terms):
        out = {}
        for t in terms:
            try:
                w = parse_w(t["word"])
                c = parse_rational(t["coeff"])
            except (KeyError, ValueError) as exc:
                raise SchemaError(f"bad term {t!r}: {exc}") from None
            if w in out:
                raise SchemaError(f"duplicate word in element: {t['word']!r}")
            out[w] = c
        return out

    try:
        rules = [(parse_w(r["lhs"]), parse_elem(r["rhs"]))
                 for r in data.get("rules", [])]
        t_images = {nm: parse_elem(v) for nm, v in data["t_action"].items()}
        t_inverse = {nm: parse_elem(v) for nm, v in data["t_inverse"].items()}
    except KeyError as exc:
        raise SchemaError(f"missing presentation field {exc}") from None
    try:
        p = Presentation(gens, rules, t_images, t_inverse, order=order,
                         truncation=truncation, name=name)
    except PresentationError as exc:
        raise SchemaError(str(exc)) from None
    if check_confluence:
        p.ensure_confluent()
    return p


def load_presentation(spec, truncation=None):
    """Resolve an --algebra argument: builtin name or file:PATH."""
    if spec in BUILTIN_PRESENTATIONS:
        return BUILTIN_PRESENTATIONS[spec](truncation=truncation)
    if spec.startswith("file:"):
        import json as _json
        from pathlib import Path
        data = _json.loads(Path(spec[5:]).read_text())
        return presentation_from_json(data, truncation=truncation)
    raise PresentationError(
        f"unknown algebra {spec!r} (use jordan, super-jordan or file:PATH)")
