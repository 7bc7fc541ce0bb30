"""Random generators shared by the test modules."""

from hitchin_mirror.epoly import EPolynomial
from hitchin_mirror.gamma import GammaGroup, TorsionClass, enumerate_elements
from hitchin_mirror.orbifold import OrbifoldPresentation, Sector


def random_poly(rng):
    return EPolynomial(
        {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-9, 9) for _ in range(rng.randint(0, 4))}
    )


def random_presentation(rng, n=None, g=None, max_sectors=20):
    n = n or rng.randint(2, 3)
    g = g or rng.randint(1, 2)
    G = GammaGroup(n, g)
    elems = list(enumerate_elements(G))
    chosen = rng.sample(elems, rng.randint(1, min(max_sectors, len(elems))))
    chosen.sort(key=lambda e: (not e.is_identity(), e.coords))
    sectors = []
    for gamma in chosen:
        iso = {}
        for _ in range(rng.randint(0, 4)):
            iso[G.character(rng.choice(elems).coords)] = random_poly(rng)
        if rng.random() < 0.7:
            iso[G.trivial_character()] = random_poly(rng)
        shift = 0 if gamma.is_identity() else rng.randint(0, 5)
        sectors.append(Sector(gamma, shift, iso))
    return OrbifoldPresentation(G, tuple(sectors))


def random_torsion_class(rng, G):
    size = G.rank
    form = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            v = rng.randrange(G.n)
            form[i][j], form[j][i] = v, -v
    return TorsionClass(G.n, tuple(map(tuple, form)))
