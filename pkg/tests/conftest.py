"""Shared oracles for the test suite."""


def fuss(spec, k):
    """Product formula count prod (kh + d_i)/d_i, exactly."""
    num = den = 1
    for d in spec.degrees:
        num *= k * spec.coxeter_number + d
        den *= d
    assert num % den == 0
    return num // den


def bfs_reflection_length(grp, w):
    """Distance from the identity in the Cayley graph on all reflections."""
    refl = grp.reflections()
    ident = grp.identity()
    if w == ident:
        return 0
    frontier = {ident}
    seen = {ident}
    dist = 0
    while frontier:
        dist += 1
        nxt = set()
        for u in frontier:
            for t in refl:
                v = u * t
                if v == w:
                    return dist
                if v not in seen:
                    seen.add(v)
                    nxt.add(v)
        frontier = nxt
    raise AssertionError("not generated by reflections")


def acts_as_minus_one(g, flat, w):
    """Whether w restricts to -1 on a one-dimensional flat."""
    fam = g.family
    if fam == "I2":
        if flat.kind != "line" or g.act_on_flat(w, flat) != flat:
            return False
        if not w.refl:
            return w.j != 0  # c^(m/2) when m is even
        return w.j != flat.line
    n = g.spec.param
    if fam == "A":
        big, small = sorted(flat.blocks, key=len, reverse=True)
        vec = [0] * n
        for i in small:
            vec[i - 1] = len(big)
        for i in big:
            vec[i - 1] = -len(small)
    else:
        vec = [0] * n
        for b in flat.blocks:
            if frozenset(b) == frozenset(-x for x in b):
                continue
            if min(abs(t) for t in b) in b:
                for t in b:
                    if t > 0:
                        vec[t - 1] = 1
                    else:
                        vec[-t - 1] = -1
    out = [0] * n
    for i in range(1, n + 1):
        j = w(i)
        if j > 0:
            out[j - 1] += vec[i - 1]
        else:
            out[-j - 1] -= vec[i - 1]
    return out == [-x for x in vec]
