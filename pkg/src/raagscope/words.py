"""Word problem for graph groups, plus surface-group homomorphism checks.

Group elements are words: tuples of (generator, sign) letters over the
vertices of a graph, with commutation exactly at the edges. The canonical
form is the lexicographically least fully reduced representative under
commuting adjacent swaps; two words are equal in the group iff their
canonical forms coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import Graph

Letter = tuple[str, int]
Word = tuple[Letter, ...]

DEFAULT_MAX_LETTERS = 512


class WordError(ValueError):
    pass


def parse_word(text: str) -> Word:
    """Parse whitespace-separated tokens "a" or "a^-1"."""
    letters: list[Letter] = []
    for tok in text.split():
        if tok.endswith("^-1"):
            gen = tok[:-3]
            sign = -1
        else:
            gen = tok
            sign = 1
        if not gen or "^" in gen:
            raise WordError("bad word token %r" % (tok,))
        letters.append((gen, sign))
    return tuple(letters)


def format_word(w: Word) -> str:
    return " ".join(g if s > 0 else g + "^-1" for g, s in w)


def inverse(w: Word) -> Word:
    return tuple((g, -s) for g, s in reversed(w))


def concat(*ws: Word) -> Word:
    out: list[Letter] = []
    for w in ws:
        out.extend(w)
    return tuple(out)


def power(w: Word, k: int) -> Word:
    if k < 0:
        return power(inverse(w), -k)
    return concat(*([w] * k)) if k else ()


def _check_letters(graph: Graph, w: Word, max_letters: int) -> None:
    if len(w) > max_letters:
        raise WordError("word has %d letters, cap is %d" % (len(w), max_letters))
    for g, s in w:
        if s not in (1, -1):
            raise WordError("bad letter sign %r" % (s,))
        if not graph.has_vertex(g):
            raise WordError("unknown generator %r" % (g,))


def _commute(graph: Graph, a: str, b: str) -> bool:
    return a == b or graph.has_edge(a, b)


def _reduce_full(graph: Graph, letters: list[Letter]) -> list[Letter]:
    # delete x ... x^-1 pairs separated only by letters commuting with x;
    # a word admitting no such deletion is reduced in the group
    changed = True
    while changed:
        changed = False
        n = len(letters)
        for i in range(n):
            gi, si = letters[i]
            for j in range(i + 1, n):
                gj, sj = letters[j]
                if gj == gi and sj == -si:
                    del letters[j]
                    del letters[i]
                    changed = True
                    break
                if not _commute(graph, gi, gj):
                    break
            if changed:
                break
    return letters


def _letter_key(letter: Letter) -> tuple[str, int]:
    g, s = letter
    return (g, 0 if s > 0 else 1)


def _canonical_sort(graph: Graph, letters: list[Letter]) -> list[Letter]:
    # lexicographically least shuffle of a reduced word: repeatedly extract
    # the least letter every earlier letter commutes with (greedy adjacent
    # bubbling alone can stall in a local minimum); commutations preserve
    # reducedness so no new cancellations appear
    remaining = list(letters)
    out: list[Letter] = []
    while remaining:
        best_i = -1
        best_key = None
        seen: set[str] = set()
        for i, letter in enumerate(remaining):
            gen = letter[0]
            if all(_commute(graph, h, gen) for h in seen):
                k = _letter_key(letter)
                if best_key is None or k < best_key:
                    best_key = k
                    best_i = i
            seen.add(gen)
        out.append(remaining.pop(best_i))
    return out


def normal_form(graph: Graph, w: Word, max_letters: int = DEFAULT_MAX_LETTERS) -> Word:
    """Canonical representative; equal normal forms iff equal group elements."""
    _check_letters(graph, w, max_letters)
    letters = _reduce_full(graph, list(w))
    return tuple(_canonical_sort(graph, letters))


def is_trivial(graph: Graph, w: Word, max_letters: int = DEFAULT_MAX_LETTERS) -> bool:
    _check_letters(graph, w, max_letters)
    return not _reduce_full(graph, list(w))


def are_equal(graph: Graph, u: Word, v: Word, max_letters: int = DEFAULT_MAX_LETTERS) -> bool:
    return is_trivial(graph, concat(u, inverse(v)), max_letters=2 * max_letters)


def _cyclic_reduce(graph: Graph, w: Word, max_letters: int):
    """(cyclically reduced word, conjugator c) with c^-1 w c = result."""
    _check_letters(graph, w, max_letters)
    current = list(_reduce_full(graph, list(w)))
    conj: list[Letter] = []
    while True:
        hit = None
        n = len(current)
        for i in range(n):
            gi, si = current[i]
            if not all(_commute(graph, gi, current[p][0]) for p in range(i)):
                continue
            for j in range(n - 1, i, -1):
                gj, sj = current[j]
                if gj == gi and sj == -si:
                    if all(_commute(graph, gi, current[q][0]) for q in range(j + 1, n)):
                        hit = (i, j)
                    break
                # scanning from the back: every letter after j must commute
                if not _commute(graph, gi, gj):
                    break
            if hit:
                break
        if not hit:
            return tuple(current), tuple(conj)
        i, j = hit
        conj.append(current[i])
        del current[j]
        del current[i]
        current = _reduce_full(graph, current)


def cyclic_normal_form(graph: Graph, w: Word, max_letters: int = DEFAULT_MAX_LETTERS) -> Word:
    """Shortest conjugacy-class representative reachable by reduction and
    cyclic permutation, deterministically chosen."""
    word, _ = _cyclic_with_conjugator(graph, w, max_letters)
    return word


def _cyclic_with_conjugator(graph: Graph, w: Word, max_letters: int = DEFAULT_MAX_LETTERS):
    reduced, conj = _cyclic_reduce(graph, w, max_letters)
    if not reduced:
        return (), tuple(conj)
    best = None
    best_rot = 0
    for k in range(len(reduced)):
        rot = normal_form(graph, reduced[k:] + reduced[:k], max_letters)
        key = tuple(_letter_key(l) for l in rot)
        if best is None or key < best[0]:
            best = (key, rot)
            best_rot = k
    conjugator = concat(tuple(conj), reduced[:best_rot])
    return best[1], conjugator


def conjugate_into_clique(graph: Graph, w: Word,
                          max_letters: int = DEFAULT_MAX_LETTERS) -> Optional[frozenset[str]]:
    """The support of the cyclic normal form, when that support is a clique.

    A hit means w is conjugate into the free abelian subgroup on the returned
    clique; the implied conjugation is re-verified before returning.
    """
    nf, conj = _cyclic_with_conjugator(graph, w, max_letters)
    support = frozenset(g for g, _ in nf)
    for u in sorted(support):
        for v in sorted(support):
            if u < v and not graph.has_edge(u, v):
                return None
    check = concat(conj, nf, inverse(conj))
    if not are_equal(graph, check, w, max_letters=4 * max_letters + len(w)):
        raise AssertionError("cyclic reduction produced an invalid conjugator")
    return support


# ---------------------------------------------------------------------------
# surface-group presentations and homomorphisms


@dataclass(frozen=True)
class SurfacePresentation:
    """Compact oriented surface group: genus handles x_i,y_i and boundary
    generators d_i with the single relation prod [x_i,y_i] prod d_j."""

    genus: int
    boundary: int

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0:
            raise WordError("genus and boundary count must be nonnegative")

    @property
    def generators(self) -> tuple[str, ...]:
        xs = tuple("x%d" % (i + 1) for i in range(self.genus))
        ys = tuple("y%d" % (i + 1) for i in range(self.genus))
        ds = tuple("d%d" % (i + 1) for i in range(self.boundary))
        return xs + ys + ds

    @property
    def is_hyperbolic(self) -> bool:
        return 2 - 2 * self.genus - self.boundary < 0


def relator(pres: SurfacePresentation, images: dict[str, Word]) -> Word:
    """Image of the defining relation under the generator assignment."""
    missing = [g for g in pres.generators if g not in images]
    if missing:
        raise WordError("missing generator image(s): %s" % ", ".join(missing))
    parts: list[Word] = []
    for i in range(pres.genus):
        x = images["x%d" % (i + 1)]
        y = images["y%d" % (i + 1)]
        parts += [x, y, inverse(x), inverse(y)]
    for i in range(pres.boundary):
        parts.append(images["d%d" % (i + 1)])
    return concat(*parts)


def check_hom(graph: Graph, pres: SurfacePresentation, images: dict[str, Word]) -> bool:
    """True iff the assignment extends to a homomorphism into the graph group."""
    w = relator(pres, images)
    return is_trivial(graph, w, max_letters=max(DEFAULT_MAX_LETTERS, len(w)))


def boundary_clique_supports(graph: Graph, pres: SurfacePresentation,
                             images: dict[str, Word]) -> list[Optional[frozenset[str]]]:
    """Per boundary generator: the clique its image is conjugate into, or None."""
    return [conjugate_into_clique(graph, images["d%d" % (i + 1)])
            for i in range(pres.boundary)]


def is_relative_hom(graph: Graph, pres: SurfacePresentation, images: dict[str, Word]) -> bool:
    """Boundary-respecting homomorphism test: every boundary image must be
    conjugate into a clique subgroup. Requires at least one boundary."""
    if pres.boundary < 1:
        raise WordError("relative test needs at least one boundary component")
    if not check_hom(graph, pres, images):
        raise WordError("images do not define a homomorphism")
    return all(c is not None for c in boundary_clique_supports(graph, pres, images))


# ---------------------------------------------------------------------------
# bounded kernel search


def _free_letters(gens: list[str]) -> list[Letter]:
    out: list[Letter] = []
    for g in gens:
        out.append((g, 1))
        out.append((g, -1))
    return out


def _iter_reduced_words(gens: list[str], max_len: int):
    """Freely reduced words by length, then lexicographic in the fixed
    generator order with positive letters first."""
    letters = _free_letters(gens)

    def rec(prefix: list[Letter], remaining: int):
        if remaining == 0:
            yield tuple(prefix)
            return
        for letter in letters:
            if prefix and prefix[-1][0] == letter[0] and prefix[-1][1] == -letter[1]:
                continue
            prefix.append(letter)
            yield from rec(prefix, remaining - 1)
            prefix.pop()

    for length in range(1, max_len + 1):
        yield from rec([], length)


def _surface_relator_word(genus: int) -> Word:
    parts: list[Word] = []
    for i in range(genus):
        x = (("x%d" % (i + 1), 1),)
        y = (("y%d" % (i + 1), 1),)
        parts += [x, y, inverse(x), inverse(y)]
    return concat(*parts)


def _free_reduce(w: Word) -> Word:
    out: list[Letter] = []
    for letter in w:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def _dehn_trivial(genus: int, w: Word) -> bool:
    """Word problem for the closed genus-g surface group (g >= 2) by Dehn's
    algorithm on the standard relator."""
    rel = _surface_relator_word(genus)
    length = len(rel)
    half = length // 2
    variants = []
    for base in (rel, inverse(rel)):
        for k in range(length):
            variants.append(base[k:] + base[:k])
    current = _free_reduce(w)
    progress = True
    while progress and current:
        progress = False
        for size in range(length, half, -1):
            for start in range(len(current) - size + 1):
                seg = current[start:start + size]
                for var in variants:
                    if var[:size] == seg:
                        replacement = inverse(var[size:])
                        current = _free_reduce(
                            current[:start] + replacement + current[start + size:])
                        progress = True
                        break
                if progress:
                    break
            if progress:
                break
    return not current


def kernel_search(graph: Graph, pres: SurfacePresentation, images: dict[str, Word],
                  max_len: int) -> Optional[Word]:
    """First nontrivial surface-group element (length, then lex) killed by the
    homomorphism, up to max_len; None if the bounded search is clean.

    With boundary, the surface group is free of rank 2g+m-1 after eliminating
    the last boundary generator. Closed surfaces (g >= 2) use Dehn's algorithm
    to recognize nontrivial elements.
    """
    if not check_hom(graph, pres, images):
        raise WordError("images do not define a homomorphism")
    g_, m = pres.genus, pres.boundary
    if m == 0 and g_ <= 1:
        raise WordError("closed case needs genus at least 2 to be hyperbolic")
    gens = ["x%d" % (i + 1) for i in range(g_)] + ["y%d" % (i + 1) for i in range(g_)]
    if m:
        gens += ["d%d" % (i + 1) for i in range(m - 1)]
    if not gens:
        return None
    image_cap = max(DEFAULT_MAX_LETTERS,
                    max_len * max((len(w) for w in images.values()), default=1) + 1)
    for word in _iter_reduced_words(gens, max_len):
        if m == 0 and _dehn_trivial(pres.genus, word):
            continue  # trivial in the surface group, not a kernel witness
        img = concat(*(images[g] if s > 0 else inverse(images[g]) for g, s in word))
        if is_trivial(graph, img, max_letters=image_cap):
            return word
    return None


# ---------------------------------------------------------------------------
# free-group probe: products of large powers stay nontrivial


def power_product_nontrivial(us: list[Word], bs: list[Word], ns: list[int]) -> bool:
    """Free reduction check that b_1 u_1^{n_1} ... b_m u_m^{n_m} is nontrivial
    in the free group on the letters' support.

    Hypothesis checked (violations raise): every u_i nontrivial, and wherever
    consecutive power bases coincide (cyclically), the separating b must not
    commute with that base, which in a free group means they are not powers of
    a common word; here it is checked as non-commutation by free reduction.
    """
    m = len(us)
    if not (m and len(bs) == m and len(ns) == m):
        raise WordError("need equally many base words, separators, exponents")
    names = sorted({g for w in list(us) + list(bs) for g, _ in w})
    free = Graph(names, [])
    for i, u in enumerate(us):
        if is_trivial(free, u):
            raise WordError("hypothesis violation: base word %d is trivial" % (i + 1,))
    if m >= 2:
        for i in range(m):
            prev = us[i - 1]  # wraps: u_0 is u_m
            if are_equal(free, prev, us[i]):
                comm = concat(bs[i], us[i], inverse(bs[i]), inverse(us[i]))
                if is_trivial(free, comm):
                    raise WordError(
                        "hypothesis violation: u_%d = u_%d but b_%d commutes with it"
                        % (i or m, i + 1, i + 1))
    total = concat(*(concat(bs[i], power(us[i], ns[i])) for i in range(m)))
    return not is_trivial(free, total, max_letters=max(DEFAULT_MAX_LETTERS, len(total)))
