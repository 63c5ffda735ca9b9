"""Independent slow-path oracles used to pin down the fast implementations."""

from torelli.freegroup import Word, commutator, reduce


def rand_word(rng, rank, length):
    letters = []
    for _ in range(length):
        letters.append(rng.randint(1, rank) * rng.choice([1, -1]))
    return reduce(letters)


def poly_mul(p, q, cutoff):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            if len(m1) + len(m2) > cutoff:
                continue
            key = m1 + m2
            out[key] = out.get(key, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def naive_magnus(w: Word, cutoff: int) -> dict:
    """Flat monomial->coefficient expansion by plain polynomial products."""
    acc = {(): 1}
    for x in w.letters:
        j = abs(x)
        if x > 0:
            letter = {(): 1, (j,): 1}
        else:
            letter = {tuple([j] * i): (-1) ** i for i in range(cutoff + 1)}
        acc = poly_mul(acc, letter, cutoff)
    return acc


def flatten_series(series) -> dict:
    out = {}
    for d, bucket in series.terms.items():
        for m, c in bucket.items():
            out[m] = c
    return out


def nested_commutator(words) -> Word:
    """Left-normed bracket [[...[w1,w2],w3...],wn] of a list of words."""
    acc = words[0]
    for w in words[1:]:
        acc = commutator(acc, w)
    return acc
