"""Pure-Python word kernels.

Two encodings are used:

* syllables: tuple of ``(generator, exponent)`` pairs, exponent nonzero,
  adjacent generators distinct (the run-length form of a reduced word);
* letters: tuple of nonzero ints, ``g + 1`` for a generator and ``-(g + 1)``
  for its inverse.

The compiled module exposes the same functions with identical results.
"""

from __future__ import annotations

BACKEND = "python"


def reduce_syllables(pairs):
    """Freely reduce an arbitrary sequence of ``(generator, exponent)`` pairs."""
    stack = []
    for g, e in pairs:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            e += stack[-1][1]
            stack.pop()
            if e:
                stack.append((g, e))
        else:
            stack.append((g, e))
    return tuple(stack)


def mul_syllables(u, v):
    """Product of two already reduced syllable tuples."""
    if not u:
        return v
    if not v:
        return u
    i = len(u) - 1
    j = 0
    nv = len(v)
    while i >= 0 and j < nv:
        gu, eu = u[i]
        gv, ev = v[j]
        if gu != gv:
            break
        e = eu + ev
        if e:
            return u[:i] + ((gu, e),) + v[j + 1:]
        i -= 1
        j += 1
    return u[:i + 1] + v[j:]


def free_reduce(letters):
    """Freely reduce a letter sequence."""
    stack = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def cyclic_core(letters):
    """Return ``(k, core)`` with ``letters == p + core + p^-1`` and ``len(p) == k``.

    ``letters`` must be freely reduced; ``core`` is cyclically reduced.
    """
    n = len(letters)
    k = 0
    while 2 * k + 1 < n and letters[k] == -letters[n - 1 - k]:
        k += 1
    return k, tuple(letters[k:n - k])


def _longest_piece(w, i, rel, L):
    """Longest match of ``w[i:]`` against a cyclic permutation of ``rel`` or its inverse.

    Returns ``(length, direction, start)``; ties resolved by direction then start.
    """
    best = (0, 0, 0)
    n = len(w)
    for d in (0, 1):
        for s in range(L):
            m = 0
            while m < L and i + m < n:
                if d == 0:
                    r = rel[(s + m) % L]
                else:
                    r = -rel[(s - m) % L]
                if w[i + m] != r:
                    break
                m += 1
            if m > best[0]:
                best = (m, d, s)
    return best


def _complement_inverse(rel, L, m, d, s):
    # relator cyclic word r = piece + rest; piece == rest^-1, returned here
    out = []
    for t in range(L - 1, m - 1, -1):
        if d == 0:
            r = rel[(s + t) % L]
        else:
            r = -rel[(s - t) % L]
        out.append(-r)
    return out


def dehn_reduce(letters, relator):
    """Dehn's algorithm on a linear word for a single cyclically reduced relator.

    Scans left to right; at the first position whose longest relator piece
    exceeds half the relator length, replaces that piece by the inverse of
    its complement, freely reduces and rescans from the start.
    """
    L = len(relator)
    w = free_reduce(letters)
    if L == 0:
        return w
    rel = tuple(relator)
    changed = True
    while changed:
        changed = False
        for i in range(len(w)):
            m, d, s = _longest_piece(w, i, rel, L)
            if 2 * m > L:
                repl = _complement_inverse(rel, L, m, d, s)
                w = free_reduce(w[:i] + tuple(repl) + w[i + m:])
                changed = True
                break
    return w


def dehn_is_trivial(letters, relator):
    """Decide triviality: linear Dehn reduction, then Dehn on the cyclic word."""
    L = len(relator)
    w = dehn_reduce(letters, relator)
    while w:
        _, core = cyclic_core(w)
        n = len(core)
        hit = False
        # look for long pieces that wrap around the end of the cyclic word
        for i in range(n):
            rot = core[i:] + core[:i]
            m, d, s = _longest_piece(rot, 0, tuple(relator), L)
            if 2 * m > L:
                repl = _complement_inverse(tuple(relator), L, m, d, s)
                w = dehn_reduce(tuple(repl) + rot[m:], relator)
                hit = True
                break
        if not hit:
            return False
    return True
