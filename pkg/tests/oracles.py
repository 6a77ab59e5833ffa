"""Deliberately naive reference implementations used as test oracles."""

from itertools import product


def naive_reduce(letters):
    """Stack-based free reduction of signed letters (gen+1 / -(gen+1))."""
    out = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def naive_words(rank, length):
    """Every reduced signed-letter word of exactly ``length`` letters."""
    alphabet = [s * (g + 1) for g in range(rank) for s in (1, -1)]
    return [w for w in product(alphabet, repeat=length) if naive_reduce(w) == w]


def brute_solutions(system, elements):
    """Solution set of ``system`` by full enumeration over ``elements``."""
    g = system.group
    out = []
    for vals in product(elements, repeat=len(system.variables)):
        a = dict(zip(system.variables, vals))
        if all(g.equal(eq.lhs.evaluate(a, g), eq.rhs) for eq in system.equations):
            out.append(vals)
    return out


def letters_of(word):
    """Signed letters of a ReducedWord, recomputed from its syllables."""
    out = []
    for g, e in word.syllables:
        out += [(g + 1) if e > 0 else -(g + 1)] * abs(e)
    return tuple(out)


def random_system(rng, group, elements, coefficients=False, max_vars=3, max_eqs=3):
    """Seeded random system: 1-3 variables, 1-3 equations, exponents in [-3, 3]."""
    from gew.eqsys import Const, Equation, EquationSystem, MixedWord, Var

    nv = rng.randint(1, max_vars)
    names = [f"x{i + 1}" for i in range(nv)]
    eqs = []
    for _ in range(rng.randint(1, max_eqs)):
        items = []
        for _ in range(rng.randint(1, 4)):
            if coefficients and rng.random() < 0.35:
                items.append(Const(rng.choice(elements)))
            else:
                items.append(Var(rng.choice(names), rng.choice([-3, -2, -1, 1, 2, 3])))
        eqs.append(Equation(MixedWord.of(group, items), rng.choice(elements)))
    return EquationSystem(group, tuple(names), tuple(eqs))
