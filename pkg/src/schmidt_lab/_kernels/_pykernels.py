"""Pure-Python versions of the compiled kernels (same contracts)."""

import numpy as np

NAME = "python"


def as_table(table):
    return np.asarray(table, dtype=np.int64).tolist()


def as_vector(values):
    return [int(v) for v in values]


def new_map(n):
    return [-1] * n


def closure_extend(src, dst, phi, used, gens, cls_src, cls_dst, injective):
    gens = [int(g) for g in gens]
    if any(phi[g] < 0 for g in gens):
        return -1
    queue = [t for t in range(len(src)) if phi[t] >= 0]
    count = len(queue)
    head = 0
    while head < len(queue):
        t = queue[head]
        head += 1
        row = src[t]
        drow = dst[phi[t]]
        for g in gens:
            s = row[g]
            img = drow[phi[g]]
            cur = phi[s]
            if cur < 0:
                if cls_src[s] != cls_dst[img]:
                    return -1
                if injective and used[img] >= 0:
                    return -1
                phi[s] = img
                used[img] = s
                queue.append(s)
                count += 1
            elif cur != img:
                return -1
    return count


def compose_table(maps):
    maps = np.asarray(maps, dtype=np.int32)
    k = maps.shape[0]
    index = {row.tobytes(): i for i, row in enumerate(maps)}
    out = np.empty((k, k), dtype=np.int32)
    for i in range(k):
        # row j of composed: maps[j] evaluated at maps[i]
        composed = np.ascontiguousarray(maps[:, maps[i]])
        out[i] = [index.get(r.tobytes(), -1) for r in composed]
    return out
