"""Group presentations: signed words over named generators, a small text
grammar for them, and reduction of a presentation to the normal form in
which no proper subword of any relator represents the identity.

Words are immutable tuples of signed letters.  Triviality questions are
delegated to an oracle object with an ``answer(word)`` method returning
one of the constants TRIVIAL, NONTRIVIAL, UNKNOWN.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"
UNKNOWN = "unknown"

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class PresentationError(ValueError):
    pass


class PresentationSyntaxError(PresentationError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DuplicateGenerator(PresentationError):
    pass


class UndeclaredGenerator(PresentationError):
    pass


class OracleInconclusive(PresentationError):
    """The oracle answered UNKNOWN for a word the caller needed decided."""

    def __init__(self, word: "Word"):
        super().__init__(f"oracle could not decide whether {word} is trivial")
        self.word = word


class NotReduced(PresentationError):
    """Certification was requested for a presentation that is not reduced."""

    def __init__(self, report: "ReducedReport"):
        lines = [v.detail for v in report.violations] or ["oracle inconclusive"]
        super().__init__("presentation is not reduced: " + "; ".join(lines))
        self.report = report


class TrivialPresentedGroup(PresentationError):
    """Every generator is trivial, so the presented group is the trivial
    group, which has no reduced presentation with a nonempty generating
    set."""


class StepBudgetExceeded(RuntimeError):
    def __init__(self, max_steps: int):
        super().__init__(f"presentation reduction exceeded {max_steps} steps")
        self.max_steps = max_steps


@dataclass(frozen=True, order=True)
class Letter:
    gen: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {self.sign}")

    @property
    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)

    def __str__(self) -> str:
        return self.gen if self.sign == 1 else self.gen + "^-1"


@dataclass(frozen=True)
class Word:
    """A word in the free group on the ambient generators."""

    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def inverse(self) -> "Word":
        return Word(tuple(l.inverse for l in reversed(self.letters)))

    def free_reduce(self) -> "Word":
        out: list[Letter] = []
        for l in self.letters:
            if out and out[-1] == l.inverse:
                out.pop()
            else:
                out.append(l)
        return Word(tuple(out))

    def cyclic_reduce(self) -> "Word":
        out = self.free_reduce().letters
        while len(out) >= 2 and out[0] == out[-1].inverse:
            out = out[1:-1]
        return Word(out)

    @property
    def is_freely_reduced(self) -> bool:
        return self.free_reduce() == self

    @property
    def is_cyclically_reduced(self) -> bool:
        return self.cyclic_reduce() == self

    def subword(self, i: int, j: int) -> "Word":
        """Letters i through j inclusive, 1-based; index 0 contributes the
        identity, so subword(0, j) is the length-j prefix."""
        if not (0 <= i <= j <= len(self.letters)):
            raise IndexError(
                f"subword indices ({i}, {j}) out of range for length {len(self.letters)}"
            )
        return Word(self.letters[max(i, 1) - 1 : j])

    def exponent_sum(self, gen: str) -> int:
        return sum(l.sign for l in self.letters if l.gen == gen)

    def exponent_vector(self, generators: tuple[str, ...]) -> tuple[int, ...]:
        return tuple(self.exponent_sum(g) for g in generators)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        run_letter, run_len = self.letters[0], 1
        for l in self.letters[1:]:
            if l == run_letter:
                run_len += 1
            else:
                parts.append(_format_run(run_letter, run_len))
                run_letter, run_len = l, 1
        parts.append(_format_run(run_letter, run_len))
        return " ".join(parts)


def _format_run(letter: Letter, count: int) -> str:
    exp = letter.sign * count
    return letter.gen if exp == 1 else f"{letter.gen}^{exp}"


def word(*items) -> Word:
    """Build a word from strings like "a", "a^-1" or (gen, sign) pairs."""
    letters = []
    for it in items:
        if isinstance(it, Letter):
            letters.append(it)
        elif isinstance(it, tuple):
            letters.append(Letter(it[0], it[1]))
        elif it.endswith("^-1"):
            letters.append(Letter(it[:-3], -1))
        else:
            letters.append(Letter(it))
    return Word(tuple(letters))


@dataclass(frozen=True)
class Presentation:
    """A finite presentation.  The generator list may be empty only when
    there are no relators with content (the trivial group shows up this
    way as the end point of relator elimination)."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        seen = set()
        for g in self.generators:
            if not _IDENT_RE.fullmatch(g):
                raise PresentationError(f"invalid generator name {g!r}")
            if g in seen:
                raise DuplicateGenerator(f"generator {g!r} declared twice")
            seen.add(g)
        for r in self.relators:
            for l in r.letters:
                if l.gen not in seen:
                    raise UndeclaredGenerator(
                        f"relator {r} uses undeclared generator {l.gen!r}"
                    )

    def word(self, text: str) -> Word:
        """Parse a word in this presentation's generators."""
        return parse_word(text, self.generators)

    def format(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(
            str(r) if len(r) else f"{self.generators[0]}^0" for r in self.relators
        )
        return f"< {gens} | {rels} >"

    def __str__(self) -> str:
        return self.format()

    def exponent_matrix(self) -> list[list[int]]:
        return [list(r.exponent_vector(self.generators)) for r in self.relators]

    def total_relator_length(self) -> int:
        return sum(len(r) for r in self.relators)


# --- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|(?P<punct>[<>|,^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise PresentationSyntaxError(f"unexpected character {text[at]!r}", at)
        if m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        elif m.lastgroup == "int":
            tokens.append(("int", int(m.group("int")), m.start("int")))
        else:
            tokens.append((m.group("punct"), m.group("punct"), m.start("punct")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise PresentationSyntaxError(f"expected {kind!r}", tok[2])
        self.i += 1
        return tok

    def presentation(self) -> Presentation:
        self.take("<")
        gens = [self.take("ident")[1]]
        while self.peek()[0] == ",":
            self.take(",")
            gens.append(self.take("ident")[1])
        self.take("|")
        relators = []
        if self.peek()[0] != ">":
            relators.append(self.word_until(gens))
            while self.peek()[0] == ",":
                self.take(",")
                relators.append(self.word_until(gens))
        self.take(">")
        self.take("end")
        return Presentation(tuple(gens), tuple(relators))

    def word_until(self, gens) -> Word:
        letters = list(self.term(gens))
        while self.peek()[0] in ("ident", "("):
            letters.extend(self.term(gens))
        return Word(tuple(letters))

    def term(self, gens):
        kind, value, at = self.peek()
        if kind == "ident":
            self.take()
            if value not in gens:
                raise UndeclaredGenerator(
                    f"undeclared generator {value!r} at position {at}"
                )
            base = (Letter(value),)
        elif kind == "(":
            self.take()
            base = self.word_until(gens).letters
            self.take(")")
        else:
            raise PresentationSyntaxError("expected a generator or '('", at)
        if self.peek()[0] == "^":
            self.take()
            exp = self.take("int")[1]
            if exp < 0:
                base = tuple(l.inverse for l in reversed(base))
                exp = -exp
            base = base * exp
        return base


def parse_presentation(text: str) -> Presentation:
    """Parse "< a, b | a^2, (a b)^3 >".  Identifiers are maximal-munch, so
    multi-letter products need whitespace or parentheses between factors."""
    return _Parser(text).presentation()


def parse_word(text: str, generators=None) -> Word:
    p = _Parser(text)
    gens = list(generators) if generators is not None else None

    class _AnyGens:
        def __contains__(self, item):
            return True

    w = p.word_until(gens if gens is not None else _AnyGens())
    p.take("end")
    return w


# --- reducedness -----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # not-freely-reduced | not-cyclically-reduced | short-relator
    #            | trivial-generator | trivial-subword
    detail: str
    relator: int | None = None
    span: tuple[int, int] | None = None


@dataclass(frozen=True)
class ReducedReport:
    status: str  # "reduced" | "violations" | "unverified"
    violations: tuple[Violation, ...]
    unknown: tuple[str, ...]
    oracle: str

    @property
    def ok(self) -> bool:
        return self.status == "reduced"


@dataclass(frozen=True)
class ReducedPresentation:
    """A presentation together with the certificate that it is reduced."""

    presentation: Presentation
    certificate: ReducedReport

    @property
    def generators(self) -> tuple[str, ...]:
        return self.presentation.generators

    @property
    def relators(self) -> tuple[Word, ...]:
        return self.presentation.relators

    def format(self) -> str:
        return self.presentation.format()


class _CachedOracle:
    def __init__(self, oracle):
        self.oracle = oracle
        self.cache: dict[tuple, str] = {}

    def answer(self, w: Word) -> str:
        key = w.letters
        if key not in self.cache:
            self.cache[key] = self.oracle.answer(w)
        return self.cache[key]


def _oracle_name(oracle) -> str:
    return getattr(oracle, "description", type(oracle).__name__)


def is_reduced(p: Presentation, oracle) -> ReducedReport:
    """Check the relator subword conditions against a triviality oracle.

    A presentation is reduced when every generator is nontrivial and, for
    every relator r of length L, the only subwords r[i, j] trivial in the
    group are the full relator, i.e. (i, j) in {(0, L), (1, L)}.  UNKNOWN
    answers downgrade the report status to "unverified" instead of failing.
    """
    cached = _CachedOracle(oracle)
    violations: list[Violation] = []
    unknown: list[str] = []

    for g in p.generators:
        ans = cached.answer(word(g))
        if ans == TRIVIAL:
            violations.append(
                Violation("trivial-generator", f"generator {g} is trivial")
            )
        elif ans == UNKNOWN:
            unknown.append(g)

    for k, r in enumerate(p.relators):
        if not r.is_freely_reduced:
            violations.append(
                Violation("not-freely-reduced", f"relator {k} ({r}) is not freely reduced", k)
            )
            continue
        if not r.is_cyclically_reduced:
            violations.append(
                Violation(
                    "not-cyclically-reduced", f"relator {k} ({r}) is not cyclically reduced", k
                )
            )
            continue
        L = len(r)
        if L < 2:
            violations.append(
                Violation("short-relator", f"relator {k} ({r}) has length {L} < 2", k)
            )
            continue
        for i in range(1, L + 1):
            for j in range(i, L + 1):
                if (i, j) == (1, L):
                    continue
                sub = r.subword(i, j)
                ans = cached.answer(sub)
                if ans == TRIVIAL:
                    violations.append(
                        Violation(
                            "trivial-subword",
                            f"subword {sub} of relator {k} ({r}) is trivial at ({i}, {j})",
                            k,
                            (i, j),
                        )
                    )
                elif ans == UNKNOWN:
                    unknown.append(str(sub))

    if violations:
        status = "violations"
    elif unknown:
        status = "unverified"
    else:
        status = "reduced"
    return ReducedReport(status, tuple(violations), tuple(unknown), _oracle_name(oracle))


def certify_reduced(p: Presentation, oracle) -> ReducedPresentation:
    report = is_reduced(p, oracle)
    if not report.ok:
        raise NotReduced(report)
    return ReducedPresentation(p, report)


def reduce_presentation(
    p: Presentation, oracle, max_steps: int = 1000
) -> ReducedPresentation:
    """Rewrite p into a reduced presentation of the same group.

    Applies, repeatedly and deterministically: free and cyclic reduction of
    relators, removal of relators trivial in the free group, deduplication,
    elimination of trivial generators, and the splitting move that replaces
    a relator having a trivial proper subword r[i, j] with the pair
    (r[i, j], r[1..i-1] * r[j+1..L]).  Each move preserves the presented
    group.  The oracle must be decisive: UNKNOWN raises OracleInconclusive.
    """
    cached = _CachedOracle(oracle)
    steps = 0

    def spend():
        nonlocal steps
        steps += 1
        if steps > max_steps:
            raise StepBudgetExceeded(max_steps)

    def decide(w: Word) -> bool:
        ans = cached.answer(w)
        if ans == UNKNOWN:
            raise OracleInconclusive(w)
        return ans == TRIVIAL

    gens = list(p.generators)
    relators = list(p.relators)

    changed = True
    while changed:
        changed = False

        # normalize: free/cyclic reduce, drop empties, dedupe
        normalized: list[Word] = []
        seen: set[tuple] = set()
        for r in relators:
            rr = r.cyclic_reduce()
            if rr != r:
                spend()
                changed = True
            if not len(rr):
                if len(r):
                    pass  # already counted the reduction
                continue
            if rr.letters in seen:
                spend()
                changed = True
                continue
            seen.add(rr.letters)
            normalized.append(rr)
        if len(normalized) != len(relators):
            changed = True
        relators = normalized

        # drop trivial generators, erasing their letters everywhere
        for g in list(gens):
            if decide(word(g)):
                spend()
                gens.remove(g)
                relators = [
                    Word(tuple(l for l in r.letters if l.gen != g)) for r in relators
                ]
                changed = True
        if not gens:
            raise TrivialPresentedGroup(
                "the presented group is trivial; it has no reduced presentation "
                "with a nonempty generating set"
            )
        if changed:
            continue

        # split the first relator with a trivial proper subword
        for k, r in enumerate(relators):
            L = len(r)
            split = None
            for i in range(1, L + 1):
                for j in range(i, L + 1):
                    if (i, j) == (1, L):
                        continue
                    if decide(r.subword(i, j)):
                        split = (i, j)
                        break
                if split:
                    break
            if split:
                i, j = split
                piece = r.subword(i, j)
                rest = r.subword(0, i - 1) * Word(r.letters[j:])
                relators[k : k + 1] = [piece, rest]
                spend()
                changed = True
                break

    result = Presentation(tuple(gens), tuple(relators))
    report = is_reduced(result, cached)
    if not report.ok:  # pragma: no cover - the loop above is a fixpoint
        raise NotReduced(report)
    return ReducedPresentation(result, report)
