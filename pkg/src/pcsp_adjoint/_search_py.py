"""Pure-Python homomorphism search kernel.

Backtracking over bitset domains with arc consistency after every
assignment.  The compiled kernel in ``_search_ext`` implements the same
algorithm step for step, so both return identical solutions and node
counts; this module is the fallback when the extension is not built and
the only kernel for targets with more than 64 vertices.

Inputs are flat: the source as CSR adjacency without loops (loops are
folded into the initial domains by the caller), the target as out/in
bitsets, and one initial domain bitset per source vertex.
"""

STATUS_EXHAUSTED = 0
STATUS_LIMIT = 1
STATUS_BUDGET = 2


def _propagate(D, queue, inq, out_ptr, out_idx, in_ptr, in_idx, tgt_out, tgt_in):
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        inq[x] = False
        dx = D[x]
        sup_out = 0
        sup_in = 0
        m = dx
        while m:
            low = m & -m
            a = low.bit_length() - 1
            sup_out |= tgt_out[a]
            sup_in |= tgt_in[a]
            m ^= low
        for i in range(out_ptr[x], out_ptr[x + 1]):
            w = out_idx[i]
            dw = D[w]
            nd = dw & sup_out
            if nd != dw:
                if not nd:
                    return False
                D[w] = nd
                if not inq[w]:
                    inq[w] = True
                    queue.append(w)
        for i in range(in_ptr[x], in_ptr[x + 1]):
            w = in_idx[i]
            dw = D[w]
            nd = dw & sup_in
            if nd != dw:
                if not nd:
                    return False
                D[w] = nd
                if not inq[w]:
                    inq[w] = True
                    queue.append(w)
    return True


def _choose(D, degree):
    best = -1
    best_size = 0
    best_deg = -1
    for v in range(len(D)):
        size = bin(D[v]).count("1")
        if size > 1 and (best < 0 or size < best_size or (size == best_size and degree[v] > best_deg)):
            best = v
            best_size = size
            best_deg = degree[v]
    return best


def _decode(D):
    return [d.bit_length() - 1 for d in D]


def search(n, out_ptr, out_idx, in_ptr, in_idx, degree, tgt_out, tgt_in, domains, budget, max_solutions,
           pick=None):
    """Return ``(status, solutions, nodes, count)``.

    ``budget < 0`` means unlimited; ``max_solutions < 0`` means all.
    ``count`` is the number of solutions met.  With ``pick`` (a sorted
    sequence of solution ordinals) only those solutions are stored and the
    search stops once the last one is reached.
    """
    solutions = []
    nodes = 0
    count = 0
    npick = -1 if pick is None else len(pick)
    pi = 0
    D = list(domains)
    if any(d == 0 for d in D) or npick == 0:
        return STATUS_EXHAUSTED, solutions, nodes, count
    inq = [True] * n
    if not _propagate(D, list(range(n)), inq, out_ptr, out_idx, in_ptr, in_idx, tgt_out, tgt_in):
        return STATUS_EXHAUSTED, solutions, nodes, count

    # frames: [var, remaining values, saved domains]
    stack = []
    while True:
        v = _choose(D, degree)
        if v < 0:
            if npick < 0:
                solutions.append(_decode(D))
            elif pick[pi] == count:
                solutions.append(_decode(D))
                pi += 1
            count += 1
            if 0 <= max_solutions <= count or pi == npick:
                return STATUS_LIMIT, solutions, nodes, count
        else:
            stack.append([v, D[v], D])
        # advance to the next consistent child
        while stack:
            frame = stack[-1]
            rem = frame[1]
            if not rem:
                stack.pop()
                continue
            low = rem & -rem
            frame[1] = rem ^ low
            nodes += 1
            if 0 <= budget < nodes:
                return STATUS_BUDGET, solutions, nodes, count
            var = frame[0]
            D = list(frame[2])
            D[var] = low
            inq = [False] * n
            inq[var] = True
            if _propagate(D, [var], inq, out_ptr, out_idx, in_ptr, in_idx, tgt_out, tgt_in):
                break
        else:
            return STATUS_EXHAUSTED, solutions, nodes, count
