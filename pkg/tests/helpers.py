import numpy as np

from cyclic_pda import STAR, Pda


def grid(text: str) -> Pda:
    """Header-less grid text (one row per line) to a Pda."""
    return Pda.from_rows(line.split() for line in text.strip().splitlines())


def valid_triples(max_K: int):
    """(K, k, L) points the construction covers, enumerated straight from the divisibility rules."""
    out = []
    for K in range(2, max_K + 1):
        for k in range(1, K + 1):
            for L in range(1, K + 1):
                if K % k or k * L >= K:
                    continue
                span = K - k * L + k
                if K % span == 0 and K // span >= 2:
                    out.append((K, k, L))
    return out


def mutate(p: Pda, rng: np.random.Generator) -> Pda:
    """Change one entry: star -> symbol, symbol -> star, or symbol -> another symbol."""
    a = p.entries.copy()
    i, j = int(rng.integers(p.F)), int(rng.integers(p.K))
    top = int(a.max()) if (a != STAR).any() else 0
    if a[i, j] == STAR:
        a[i, j] = rng.integers(0, top + 2)
    elif rng.random() < 0.5:
        a[i, j] = STAR
    else:
        new = int(rng.integers(0, top + 2))
        a[i, j] = new if new != a[i, j] else new + 1
    return Pda(a)
