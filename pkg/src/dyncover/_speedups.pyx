# cython: language_level=3, boundscheck=False, wraparound=False

cdef inline Py_ssize_t _first_ge(list xs, object x0, Py_ssize_t lo, Py_ssize_t hi, bint strict):
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if (xs[mid] <= x0) if strict else (xs[mid] < x0):
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline Py_ssize_t _find(list link, Py_ssize_t p):
    cdef Py_ssize_t q = p, t
    while <Py_ssize_t>link[q] != q:
        q = link[q]
    while <Py_ssize_t>link[p] != q:
        t = link[p]
        link[p] = q
        p = t
    return q


def bucket_best(list xs, list rows, list nxt, x0, bint x_open, Py_ssize_t i, Py_ssize_t j):
    cdef Py_ssize_t best = -1, lvl = 0, width, s, e, p, q, r
    while i < j:
        width = (<Py_ssize_t>1) << lvl
        if i & 1:
            s = i * width
            e = s + width
            p = _first_ge(<list>xs[lvl], x0, s, e, x_open)
            if p < e:
                q = _find(<list>nxt[lvl], p)
                if q < e:
                    r = (<list>rows[lvl])[q]
                    if best < 0 or r < best:
                        best = r
            i += 1
        if j & 1:
            j -= 1
            s = j * width
            e = s + width
            p = _first_ge(<list>xs[lvl], x0, s, e, x_open)
            if p < e:
                q = _find(<list>nxt[lvl], p)
                if q < e:
                    r = (<list>rows[lvl])[q]
                    if best < 0 or r < best:
                        best = r
        i >>= 1
        j >>= 1
        lvl += 1
    return best
