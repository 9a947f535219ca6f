"""Presentations, zero-reduction of words and enumeration of finite nilpotent quotients.

A word is a tuple of generator indices.  The empty tuple doubles as the
distinguished Zero word, so shortlex ordering (``shortlex_key``) puts Zero
first without special-casing.

Enumeration works on a *window* of words: every word of length <= L that
avoids all monomial relation factors.  Words containing such a factor are
mapped straight onto the zero node.  Left and right multiplication by a
generator are unary operations on the window, and the congruence generated by
the equational relations is closed under them with a union-find whose classes
carry one image per operation (merging two classes queues a merge of their
images).  This is the usual congruence closure for unary function symbols.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import TYPE_CHECKING, Iterable, Sequence

if TYPE_CHECKING:
    from .semigroup import FiniteSemigroup

Word = tuple[int, ...]
ZERO: Word = ()

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*$")
_TOKEN_RE = re.compile(r"([A-Za-z][A-Za-z0-9]*)(?:\^(\d+))?$")


class BudgetExceeded(Exception):
    """No finiteness certificate within the enumeration budget."""


class OutOfTable(KeyError):
    """Word cannot be located in a congruence table."""


class PresentationError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def shortlex_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


@dataclass(frozen=True)
class Presentation:
    """Semigroup-with-zero presentation.

    ``allzero`` is the shorthand "every word of length ``allzero`` is zero";
    it is equivalent to listing all those words as monomial relations.
    """

    generators: tuple[str, ...]
    monomial_relations: frozenset[Word] = frozenset()
    equational_relations: frozenset[tuple[Word, Word]] = frozenset()
    allzero: int | None = None

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise PresentationError("a presentation needs at least one generator")
        if len(set(gens)) != len(gens):
            raise PresentationError("generator names must be distinct")
        for g in gens:
            if not _NAME_RE.match(g):
                raise PresentationError(f"bad generator name {g!r}")
        d = len(gens)
        mono = frozenset(tuple(w) for w in self.monomial_relations)
        eqs = set()
        for u, v in self.equational_relations:
            u, v = tuple(u), tuple(v)
            if u == v:
                raise PresentationError(f"trivial relation {self.render(u)} = {self.render(v)}")
            eqs.add((u, v) if shortlex_key(u) <= shortlex_key(v) else (v, u))
        for w in list(mono) + [x for pair in eqs for x in pair]:
            if not w:
                raise PresentationError("relation words must be nonempty")
            if any(not 0 <= i < d for i in w):
                raise PresentationError(f"relation word {w} uses an undeclared generator")
        if self.allzero is not None and self.allzero < 1:
            raise PresentationError("allzero length must be positive")
        object.__setattr__(self, "monomial_relations", mono)
        object.__setattr__(self, "equational_relations", frozenset(eqs))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def word(self, text: str | Sequence[str]) -> Word:
        """Parse ``"x1 x2"``, ``"a^2 b"`` or a sequence of generator names."""
        tokens = text.split() if isinstance(text, str) else list(text)
        return _expand_tokens(tokens, self.generators)

    def render(self, w: Word) -> str:
        """Human-readable name: runs become powers, ``()`` renders as ``0``."""
        if not w:
            return "0"
        sep = "" if all(len(g) == 1 for g in self.generators) else " "
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.generators[w[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return sep.join(parts)

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        if self.allzero is not None:
            lines.append(f"allzero: {self.allzero}")
        for w in sorted(self.monomial_relations, key=shortlex_key):
            lines.append(f"rel: {self._spaced(w)} = 0")
        for u, v in sorted(self.equational_relations, key=lambda p: (shortlex_key(p[0]), shortlex_key(p[1]))):
            lines.append(f"rel: {self._spaced(u)} = {self._spaced(v)}")
        return "\n".join(lines) + "\n"

    def encode(self) -> str:
        """One-line canonical encoding; used as a sort key for search output."""
        return "; ".join(self.to_text().strip().splitlines())

    def _spaced(self, w: Word) -> str:
        return " ".join(_run_tokens(w, self.generators))


def _run_tokens(w: Word, gens: Sequence[str]) -> list[str]:
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        out.append(gens[w[i]] if j - i == 1 else f"{gens[w[i]]}^{j - i}")
        i = j
    return out


_COMPACT_RE = re.compile(r"([A-Za-z])(?:\^(-?\d+))?")


def _split_compact(tok: str) -> list[str] | None:
    """``"ba^2b"`` -> ``["b", "a^2", "b"]``, or None if ``tok`` is not of that shape."""
    parts = []
    pos = 0
    while pos < len(tok):
        m = _COMPACT_RE.match(tok, pos)
        if m is None:
            return None
        parts.append(m.group(0))
        pos = m.end()
    return parts


def _expand_tokens(tokens: Iterable[str], gens: Sequence[str], line: int | None = None) -> Word:
    index = {g: i for i, g in enumerate(gens)}
    compact = all(len(g) == 1 for g in gens)
    expanded: list[str] = []
    for tok in tokens:
        # single-letter alphabets may be written run together: "aba", "ba^2"
        plain = _TOKEN_RE.match(tok)
        pieces = _split_compact(tok) if compact and not (plain and plain.group(1) in index) else None
        expanded.extend(pieces or [tok])
    out: list[int] = []
    for tok in expanded:
        m = _TOKEN_RE.match(tok)
        if not m:
            raise PresentationError(f"bad token {tok!r}", line)
        name, power = m.group(1), m.group(2)
        if name not in index:
            raise PresentationError(f"unknown generator {name!r}", line)
        k = int(power) if power is not None else 1
        if k < 1:
            raise PresentationError(f"exponent must be >= 1 in {tok!r}", line)
        out.extend([index[name]] * k)
    if not out:
        raise PresentationError("empty word", line)
    return tuple(out)


def parse_presentation(text: str) -> Presentation:
    """Parse the line-oriented presentation format (``gens:``, ``rel:``, ``allzero:``)."""
    gens: list[str] | None = None
    mono: set[Word] = set()
    eqs: set[tuple[Word, Word]] = set()
    allzero = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise PresentationError(f"expected 'key: value', got {line!r}", lineno)
        key = key.strip()
        if key == "gens":
            if gens is not None:
                raise PresentationError("duplicate gens declaration", lineno)
            gens = rest.split()
            if not gens:
                raise PresentationError("empty generator list", lineno)
            for g in gens:
                if not _NAME_RE.match(g):
                    raise PresentationError(f"bad generator name {g!r}", lineno)
            if len(set(gens)) != len(gens):
                raise PresentationError("duplicate generator", lineno)
        elif key == "rel":
            if gens is None:
                raise PresentationError("rel before gens", lineno)
            lhs, eq, rhs = rest.partition("=")
            if not eq or "=" in rhs:
                raise PresentationError("relation needs exactly one '='", lineno)
            left = _expand_tokens(lhs.split(), gens, lineno)
            if rhs.split() == ["0"]:
                mono.add(left)
            else:
                right = _expand_tokens(rhs.split(), gens, lineno)
                if left == right:
                    raise PresentationError("relation identifies a word with itself", lineno)
                eqs.add((left, right))
        elif key == "allzero":
            try:
                allzero = int(rest.strip())
            except ValueError:
                raise PresentationError(f"bad allzero length {rest.strip()!r}", lineno) from None
            if allzero < 1:
                raise PresentationError("allzero length must be >= 1", lineno)
        else:
            raise PresentationError(f"unknown declaration {key!r}", lineno)
    if gens is None:
        raise PresentationError("missing gens declaration")
    return Presentation(tuple(gens), frozenset(mono), frozenset(eqs), allzero)


def reduce_zero(p: Presentation, w: Word) -> Word:
    """Zero if some monomial relation word is a contiguous factor of ``w``, else ``w``."""
    if not w:
        return ZERO
    if p.allzero is not None and len(w) >= p.allzero:
        return ZERO
    for r in p.monomial_relations:
        k = len(r)
        for i in range(len(w) - k + 1):
            if w[i:i + k] == r:
                return ZERO
    return w


@dataclass(frozen=True)
class EnumerationBudget:
    max_word_length: int = 8
    max_classes: int = 1_000_000

    def __post_init__(self) -> None:
        if self.max_word_length < 1 or self.max_classes < 1:
            raise ValueError("budget limits must be positive")


@dataclass
class CongruenceTable:
    """Finished closure at the certified working length.

    ``words[i]`` is node ``i`` (node 0 is Zero); ``parent[i]`` is the root of
    its class after full path compression.  Every zero-free word shorter than
    ``working_length`` is present in ``index``.
    """

    presentation: Presentation
    working_length: int
    words: list[Word]
    index: dict[Word, int]
    parent: list[int]
    zero_class: int
    representatives: dict[int, Word]
    images: dict[int, list[int]] = field(repr=False)

    def find(self, node: int) -> int:
        return self.parent[node]

    def class_of(self, w: Word) -> int:
        p = self.presentation
        if any(not 0 <= i < p.rank for i in w):
            raise OutOfTable(f"word {w} uses letters outside the alphabet")
        if not w or len(w) >= self.working_length or not reduce_zero(p, w):
            return self.zero_class
        try:
            return self.parent[self.index[w]]
        except KeyError:
            raise OutOfTable(f"word {w} is not in the table") from None


def normal_form(t: CongruenceTable, w: Word) -> Word:
    """Shortlex-minimal member of the class of ``w`` (Zero for the zero class)."""
    return t.representatives[t.class_of(w)]


class _Window:
    """Zero-free words up to a length, grown level by level."""

    def __init__(self, p: Presentation):
        self.p = p
        self.words: list[Word] = [ZERO]
        self.index: dict[Word, int] = {ZERO: 0}
        self.levels: list[list[int]] = [[]]
        self._rel_by_len: dict[int, set[Word]] = {}
        for r in p.monomial_relations:
            self._rel_by_len.setdefault(len(r), set()).add(r)

    @property
    def length(self) -> int:
        return len(self.levels) - 1

    def _zero_suffix(self, w: Word) -> bool:
        # w[:-1] is already zero-free, so a forbidden factor must end at the last letter
        if self.p.allzero is not None and len(w) >= self.p.allzero:
            return True
        n = len(w)
        for k, rels in self._rel_by_len.items():
            if k <= n and w[n - k:] in rels:
                return True
        return False

    def grow(self, limit: int) -> None:
        d = self.p.rank
        prev = self.levels[-1] if self.length else [0]
        level = []
        for node in prev:
            base = self.words[node]
            for g in range(d):
                w = base + (g,)
                if not self._zero_suffix(w):
                    self.index[w] = len(self.words)
                    level.append(len(self.words))
                    self.words.append(w)
                    if len(self.words) > limit:
                        raise BudgetExceeded(
                            f"more than {limit} zero-free words of length <= {self.length + 1}"
                        )
        self.levels.append(level)


def _close(win: _Window, length: int, truncate: bool) -> tuple[list[int], dict[int, list[int]]]:
    """Congruence closure over nodes of length <= ``length``.

    With ``truncate`` the window holds words shorter than ``length`` and every
    product reaching ``length`` is zero.  Without it the window holds words up
    to ``length`` and longer products are simply undefined.
    """
    p = win.p
    d = p.rank
    top = length - 1 if truncate else length
    n = 1 + sum(len(lv) for lv in win.levels[1:top + 1])
    words, index = win.words, win.index
    parent = list(range(n))
    size = [1] * n
    images: dict[int, list[int]] = {}

    def child(w: Word) -> int:
        if len(w) > top:
            return 0 if truncate else -1
        return index.get(w, 0)

    images[0] = [0] * (2 * d)
    for node in range(1, n):
        w = words[node]
        images[node] = [child((g,) + w) for g in range(d)] + [child(w + (g,)) for g in range(d)]

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            x, y = pending.pop()
            rx, ry = find(x), find(y)
            if rx == ry:
                continue
            if size[rx] > size[ry]:
                rx, ry = ry, rx
            parent[rx] = ry
            size[ry] += size[rx]
            ix, iy = images.pop(rx), images[ry]
            for op in range(2 * d):
                if ix[op] >= 0:
                    if iy[op] >= 0:
                        pending.append((ix[op], iy[op]))
                    else:
                        iy[op] = ix[op]

    for u, v in sorted(p.equational_relations):
        if (len(u) > top or len(v) > top) and not truncate:
            continue
        union(child(u), child(v))

    for node in range(n):
        find(node)
    return parent, images


def _certified(win: _Window, length: int) -> bool:
    if not win.levels[length]:
        return True
    if not win.p.equational_relations:
        return False
    parent, _ = _close(win, length, truncate=False)
    zero = parent[0]
    return all(parent[node] == zero for node in win.levels[length])


def certificate_length(p: Presentation, b: EnumerationBudget | None = None) -> int:
    """Least L such that every word of length L is provably zero."""
    b = b or EnumerationBudget()
    win = _Window(p)
    return _find_certificate(win, b)


def _find_certificate(win: _Window, b: EnumerationBudget) -> int:
    limit = 8 * b.max_classes
    for length in range(1, b.max_word_length + 1):
        while win.length < length:
            win.grow(limit)
        if _certified(win, length):
            return length
    raise BudgetExceeded(
        f"words of length {b.max_word_length} are not all zero; "
        "the presentation may define an infinite or non-nilpotent semigroup"
    )


def enumerate_semigroup(
    p: Presentation, b: EnumerationBudget | None = None
) -> tuple[FiniteSemigroup, CongruenceTable]:
    """Enumerate the finite quotient semigroup with zero.

    Raises ``BudgetExceeded`` when no certificate length is found within
    ``b.max_word_length`` or the class count exceeds ``b.max_classes``.
    """
    from .semigroup import FiniteSemigroup

    b = b or EnumerationBudget()
    win = _Window(p)
    length = _find_certificate(win, b)
    parent, images = _close(win, length, truncate=True)
    n_nodes = len(parent)
    zero_class = parent[0]

    reps: dict[int, Word] = {zero_class: ZERO}
    rep_node: dict[int, int] = {zero_class: 0}
    for node in range(1, n_nodes):
        root = parent[node]
        if root not in reps:
            reps[root] = win.words[node]
            rep_node[root] = node
    if len(reps) > b.max_classes:
        raise BudgetExceeded(f"{len(reps)} classes exceed the budget of {b.max_classes}")

    roots = sorted(reps, key=lambda r: rep_node[r])
    elem_of = {r: i for i, r in enumerate(roots)}
    d = p.rank

    def right_mul(root: int, g: int) -> int:
        return parent[images[root][d + g]]

    table = []
    for r in roots:
        row = []
        for s in roots:
            cur = r
            for g in reps[s]:
                cur = right_mul(cur, g)
            if not reps[s]:
                cur = zero_class
            row.append(elem_of[cur])
        table.append(tuple(row))

    gen_elems = sorted({elem_of[parent[win.index[(g,)]]] if (g,) in win.index and length > 1 else 0
                        for g in range(d)})
    names = tuple(p.render(reps[r]) for r in roots)
    semigroup = FiniteSemigroup(
        elements=names,
        table=tuple(table),
        generators=tuple(gen_elems),
        words=tuple(reps[r] for r in roots),
    )
    ctable = CongruenceTable(
        presentation=p,
        working_length=length,
        words=win.words[:n_nodes],
        index={w: i for w, i in win.index.items() if i < n_nodes},
        parent=parent,
        zero_class=zero_class,
        representatives=reps,
        images={r: images[r] for r in roots},
    )
    return semigroup, ctable


def all_words(d: int, length: int) -> Iterable[Word]:
    return product(range(d), repeat=length)
