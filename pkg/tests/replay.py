"""Independent recomputation of the items a sketch should still hold."""


def replay_survivors(stream, fired, upto, signed=True):
    """Surviving directed items after step ``upto``, from the firing history alone.

    A firing edge ``vw`` deletes every stored item whose tail is ``v`` or
    ``w``, except that a positive closing edge (signed mode) only queries,
    and therefore only deletes, negative items.
    """
    items = set()
    for ell, (v, w, sig) in enumerate(stream.items[: upto + 1]):
        if fired[ell]:
            for it in list(items):
                _, tail, s = it
                if tail not in (v, w):
                    continue
                if signed and sig > 0 and s > 0:
                    continue
                items.discard(it)
        s = sig if signed else 1
        items.add((v, w, s))
        items.add((w, v, s))
    return items


def check_trajectory(stream, k, seed, signed):
    """Run one sketch estimator and compare every step with the replay; returns steps checked."""
    from signedtri.estimators import t1_light_quantum, t_all_light

    fired = {}
    steps = []

    def on_step(ell, g, sk):
        fired[ell] = g
        # size accounting: scratch shrinks by two per insert, items only by deletions
        assert len(sk.scratch) == 2 * sk.m - 2 * (ell + 1)
        assert len(sk) == len(sk.scratch) + len(sk.edges)
        assert sum(len(b) for b in sk.by_tail.values()) == len(sk.edges)
        assert sk.edges == replay_survivors(stream, fired, ell, signed)
        steps.append(ell)

    run = t1_light_quantum if signed else t_all_light
    run(stream, min(k, stream.m), seed, on_step=on_step)
    return len(steps)
