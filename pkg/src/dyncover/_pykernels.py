"""Pure-Python versions of the hot loops; the compiled module mirrors these signatures."""

from bisect import bisect_left, bisect_right


def bucket_best(xs, rows, nxt, x0, x_open, i, j):
    """Smallest live rank with x >= x0 (x > x0 if ``x_open``) over key positions [i, j).

    The positions are decomposed bottom-up into aligned blocks of the merge-sort
    tree; inside a block the x values are sorted by rank-order row, so a bisect
    finds the first candidate and the next-live links skip tombstones.
    """
    find = bisect_right if x_open else bisect_left
    best = -1
    lvl = 0
    while i < j:
        width = 1 << lvl
        if i & 1:
            s = i * width
            e = s + width
            p = find(xs[lvl], x0, s, e)
            if p < e:
                link = nxt[lvl]
                q = p
                while link[q] != q:
                    q = link[q]
                while link[p] != q:
                    link[p], p = q, link[p]
                if q < e:
                    r = rows[lvl][q]
                    if best < 0 or r < best:
                        best = r
            i += 1
        if j & 1:
            j -= 1
            s = j * width
            e = s + width
            p = find(xs[lvl], x0, s, e)
            if p < e:
                link = nxt[lvl]
                q = p
                while link[q] != q:
                    q = link[q]
                while link[p] != q:
                    link[p], p = q, link[p]
                if q < e:
                    r = rows[lvl][q]
                    if best < 0 or r < best:
                        best = r
        i >>= 1
        j >>= 1
        lvl += 1
    return best
