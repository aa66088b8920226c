# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation primitives; contract identical to _pure."""

BACKEND_NAME = "compiled"

OP_VAR = 0
OP_CONST = 1
OP_ADD = 2
OP_MUL = 3

cdef inline short _run_prog(const short* prog, Py_ssize_t lo, Py_ssize_t hi,
                            const long* vals, const short* add_flat,
                            const short* mul_flat, int n) noexcept nogil:
    cdef short stack[16]
    cdef Py_ssize_t p
    cdef int sp = 0
    cdef short op, arg
    for p in range(lo, hi, 2):
        op = prog[p]
        arg = prog[p + 1]
        if op == 0:      # var
            stack[sp] = <short> vals[arg]
            sp += 1
        elif op == 1:    # const
            stack[sp] = arg
            sp += 1
        elif op == 2:    # add
            sp -= 1
            stack[sp - 1] = add_flat[stack[sp - 1] * n + stack[sp]]
        else:            # mul
            sp -= 1
            stack[sp - 1] = mul_flat[stack[sp - 1] * n + stack[sp]]
    return stack[0]


def fill_term_arrays(const short[::1] prog, const int[::1] bounds,
                     act_prog, Py_ssize_t nvars, int n,
                     const short[::1] add_flat, const short[::1] mul_flat,
                     Py_ssize_t start, Py_ssize_t stop,
                     int[::1] offs, actors):
    cdef long vals[12]
    cdef Py_ssize_t i, k, pos, count = stop - start
    cdef Py_ssize_t nargs = bounds.shape[0] - 1
    cdef long off
    cdef int a
    cdef bint has_act = act_prog is not None
    cdef const short[::1] ap_mv
    cdef short[::1] actors_mv
    cdef const short* ap = NULL
    cdef short* act_out = NULL
    cdef Py_ssize_t ap_len = 0
    if has_act:
        ap_mv = act_prog
        actors_mv = actors
        ap = &ap_mv[0]
        ap_len = ap_mv.shape[0]
        act_out = &actors_mv[0]
    i = start
    for k in range(nvars - 1, -1, -1):
        vals[k] = i % n
        i //= n
    with nogil:
        for pos in range(count):
            off = 0
            for a in range(nargs):
                off = off * n + _run_prog(&prog[0], bounds[a], bounds[a + 1],
                                          vals, &add_flat[0], &mul_flat[0], n)
            offs[pos] = <int> off
            if has_act:
                act_out[pos] = _run_prog(ap, 0, ap_len, vals,
                                         &add_flat[0], &mul_flat[0], n)
            for k in range(nvars - 1, -1, -1):
                vals[k] += 1
                if vals[k] < n:
                    break
                vals[k] = 0


def acc_term(short[::1] acc, const short[::1] table, const int[::1] offs,
             actors, int sign, int kind, int msize,
             const short[::1] madd_flat, const short[::1] mneg,
             const short[::1] lact_flat, const short[::1] ract_flat,
             Py_ssize_t count):
    cdef Py_ssize_t i
    cdef short v
    cdef const short[::1] act_mv
    cdef const short* act = NULL
    if kind:
        act_mv = actors
        act = &act_mv[0]
    with nogil:
        for i in range(count):
            v = table[offs[i]]
            if kind == 1:
                v = lact_flat[act[i] * msize + v]
            elif kind == 2:
                v = ract_flat[act[i] * msize + v]
            if sign < 0:
                v = mneg[v]
            acc[i] = madd_flat[acc[i] * msize + v]


def nonzero_indices(const short[::1] acc, Py_ssize_t count):
    cdef Py_ssize_t i
    out = []
    for i in range(count):
        if acc[i]:
            out.append(i)
    return out


# --- row ops over Z/e for the echelon reducer (entries 0 <= x < e) ---

def row_first_nonzero(const int[::1] row, Py_ssize_t start, Py_ssize_t width):
    cdef Py_ssize_t i
    for i in range(start, width):
        if row[i]:
            return i
    return -1


def row_scale_mod(int[::1] row, long long u, Py_ssize_t start,
                  Py_ssize_t width, long long e):
    cdef Py_ssize_t i
    cdef long long v
    with nogil:
        for i in range(start, width):
            v = row[i]
            if v:
                v = v * u % e
                if v < 0:
                    v += e
                row[i] = <int> v


def row_axpy_mod(int[::1] row, const int[::1] piv, long long k,
                 Py_ssize_t start, Py_ssize_t width, long long e):
    # row -= k * piv
    cdef Py_ssize_t i
    cdef long long p, r
    with nogil:
        for i in range(start, width):
            p = piv[i]
            if p:
                r = (row[i] - k * p) % e
                if r < 0:
                    r += e
                row[i] = <int> r


def row_combine_mod(int[::1] dst, long long a, const int[::1] p,
                    long long b, const int[::1] row, Py_ssize_t start,
                    Py_ssize_t width, long long e):
    # dst = a*p + b*row
    cdef Py_ssize_t i
    cdef long long v
    with nogil:
        for i in range(start, width):
            v = (a * p[i] + b * row[i]) % e
            if v < 0:
                v += e
            dst[i] = <int> v
