"""Pure-Python evaluation primitives.

Same contract as the compiled module `_speedups`; used as the fallback when
the extension is not built (or when MACLANE_PURE_PYTHON is set) and as the
reference implementation in the backend equivalence tests.

The equation primitives work on flat tables and index ranges so that callers
can chunk work deterministically:

  fill_term_arrays  evaluate one term's ring-argument programs over a range
                    of variable tuples, producing flat table offsets (and the
                    acting ring element, for action terms)
  acc_term          fold one term's values into an accumulator of module
                    elements
  nonzero_indices   scan the accumulator for violations
"""

BACKEND_NAME = "pure"

# postfix opcodes
OP_VAR = 0
OP_CONST = 1
OP_ADD = 2
OP_MUL = 3


def fill_term_arrays(prog, bounds, act_prog, nvars, n, add_flat, mul_flat,
                     start, stop, offs, actors):
    vals = [0] * nvars
    i = start
    for k in range(nvars - 1, -1, -1):
        vals[k] = i % n
        i //= n
    stack = [0] * 16
    nargs = len(bounds) - 1
    for pos in range(stop - start):
        off = 0
        for a in range(nargs):
            sp = 0
            for p in range(bounds[a], bounds[a + 1], 2):
                op = prog[p]
                arg = prog[p + 1]
                if op == OP_VAR:
                    stack[sp] = vals[arg]
                    sp += 1
                elif op == OP_CONST:
                    stack[sp] = arg
                    sp += 1
                elif op == OP_ADD:
                    sp -= 1
                    stack[sp - 1] = add_flat[stack[sp - 1] * n + stack[sp]]
                else:
                    sp -= 1
                    stack[sp - 1] = mul_flat[stack[sp - 1] * n + stack[sp]]
            off = off * n + stack[0]
        offs[pos] = off
        if act_prog is not None:
            sp = 0
            for p in range(0, len(act_prog), 2):
                op = act_prog[p]
                arg = act_prog[p + 1]
                if op == OP_VAR:
                    stack[sp] = vals[arg]
                    sp += 1
                elif op == OP_CONST:
                    stack[sp] = arg
                    sp += 1
                elif op == OP_ADD:
                    sp -= 1
                    stack[sp - 1] = add_flat[stack[sp - 1] * n + stack[sp]]
                else:
                    sp -= 1
                    stack[sp - 1] = mul_flat[stack[sp - 1] * n + stack[sp]]
            actors[pos] = stack[0]
        # odometer step
        for k in range(nvars - 1, -1, -1):
            vals[k] += 1
            if vals[k] < n:
                break
            vals[k] = 0


def acc_term(acc, table, offs, actors, sign, kind, msize,
             madd_flat, mneg, lact_flat, ract_flat, count):
    for i in range(count):
        v = table[offs[i]]
        if kind == 1:
            v = lact_flat[actors[i] * msize + v]
        elif kind == 2:
            v = ract_flat[actors[i] * msize + v]
        if sign < 0:
            v = mneg[v]
        acc[i] = madd_flat[acc[i] * msize + v]


def nonzero_indices(acc, count):
    return [i for i in range(count) if acc[i]]


# --- row ops over Z/e for the echelon reducer (entries 0 <= x < e) ---

def row_first_nonzero(row, start, width):
    for i in range(start, width):
        if row[i]:
            return i
    return -1


def row_scale_mod(row, u, start, width, e):
    for i in range(start, width):
        v = row[i]
        if v:
            row[i] = v * u % e


def row_axpy_mod(row, piv, k, start, width, e):
    # row -= k * piv
    for i in range(start, width):
        p = piv[i]
        if p:
            row[i] = (row[i] - k * p) % e


def row_combine_mod(dst, a, p, b, row, start, width, e):
    # dst = a*p + b*row
    for i in range(start, width):
        dst[i] = (a * p[i] + b * row[i]) % e
