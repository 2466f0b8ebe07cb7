"""Independent brute-force reference implementations used by the tests.

Nothing here imports from senseselect; these work from raw edges, raw
instances and plain rational arithmetic.
"""
import itertools
import math
from collections import Counter
from fractions import Fraction


def dfs_isa(edges, m, m2):
    parents = {}
    for c, p in edges:
        parents.setdefault(c, []).append(p)
    seen, stack = set(), list(parents.get(m, []))
    while stack:
        node = stack.pop()
        if node == m2:
            return True
        if node in seen:
            continue
        seen.add(node)
        stack.extend(parents.get(node, []))
    return False


def brute_ess(base, edges):
    """E(w) set-builder evaluated over every node of the taxonomy."""
    nodes = {n for e in edges for n in e}
    virtual = {}
    for cand in nodes:
        if cand in base:
            continue
        owners = [m for m in base if dfs_isa(edges, m, cand)]
        if len(owners) == 1:
            virtual[cand] = owners[0]
    return virtual


def brute_wg(edges, m, m2, alpha):
    if m == m2:
        return Fraction(1)
    return Fraction(alpha) if dfs_isa(edges, m2, m) else Fraction(0)


def g2_entropy_form(a, b, c, d):
    """G^2 = 2 (sum O ln O - sum R ln R - sum C ln C + N ln N)."""
    def xlx(x):
        return x * math.log(x) if x > 0 else 0.0
    n = a + b + c + d
    cells = sum(xlx(x) for x in (a, b, c, d))
    rows = xlx(a + b) + xlx(c + d)
    cols = xlx(a + c) + xlx(b + d)
    return 2 * (cells - rows - cols + xlx(n))


def brute_scores(instances, word, base, edges, cws_words, alpha, use_ess, context,
                 n1=None, n2=None):
    """Plain-probability P(m|w) * prod P(c|w,m) for every sense in the space."""
    ct_w = 0
    ct_wm = Counter()
    ct_wmc = {}
    for inst_word, tag, ctx in instances:
        if inst_word != word:
            continue
        ct_w += 1
        ct_wm[tag] += 1
        for c in set(ctx):
            if c in cws_words and c != word:
                ct_wmc.setdefault(tag, Counter())[c] += 1
    space = list(base)
    if use_ess:
        space += sorted(brute_ess(base, edges))
    big_n1 = Fraction(n1) if n1 is not None else Fraction(len(space))
    big_n2 = Fraction(n2) if n2 is not None else Fraction(len(cws_words) + 1)
    scores = {}
    for m in space:
        mass = sum(ct_wm[m2] * brute_wg(edges, m, m2, alpha) for m2 in base)
        p = (mass + 1) / (ct_w + big_n1)
        for c in sorted(set(context) & set(cws_words) - {word}):
            joint = sum(ct_wmc.get(m2, {}).get(c, 0) * brute_wg(edges, m, m2, alpha) for m2 in base)
            p *= (joint + 1) / (mass + big_n2)
        scores[m] = p
    return scores


def monotone_chains(n, m):
    """Every strictly increasing list of (i, j) pairs."""
    cells = [(i, j) for i in range(n) for j in range(m)]
    for r in range(0, min(n, m) + 1):
        for combo in itertools.combinations(cells, r):
            if all(a[0] < b[0] and a[1] < b[1] for a, b in zip(combo, combo[1:])):
                yield combo


def random_toy(rng):
    """A random toy problem: <=3 senses, <=5 context words, counts <=10."""
    k = rng.randint(1, 3)
    base = tuple(f"s{i}" for i in range(k))
    edges = []
    for m in base:
        chain = [m] + [f"{m}_h{d}" for d in range(rng.randint(0, 2))]
        if rng.random() < 0.5:
            chain.append("top")
        edges += list(zip(chain, chain[1:]))
    # occasionally one base sense generalizes another
    if k > 1 and rng.random() < 0.3:
        edges.append((base[-1], base[0]))
    vocab = [f"c{i}" for i in range(rng.randint(1, 5))]
    data = []
    for m in base:
        for _ in range(rng.randint(0, 10)):
            data.append(("w", m, frozenset(rng.sample(vocab, rng.randint(0, len(vocab))))))
    rng.shuffle(data)
    context = rng.sample(vocab + ["junk"], rng.randint(0, len(vocab) + 1))
    return base, edges, vocab, data, context
