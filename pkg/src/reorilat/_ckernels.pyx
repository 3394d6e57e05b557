# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; results are identical."""

from libc.stdlib cimport malloc, free, calloc
from libc.string cimport memset

from ._pykernels import SearchBudgetExceeded, _precheck, max_relabel_codes, restarting  # noqa: F401

ctypedef unsigned long long u64

cdef enum:
    MAXN = 64


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _ctz(u64 x) nogil:
    return __builtin_ctzll(x)


cdef int _reach(int n, u64* out, u64* reach) nogil:
    """Fill strict descendant bitsets; return 0 when the digraph has a cycle."""
    cdef int indeg[MAXN]
    cdef int order[MAXN]
    cdef int head = 0, tail = 0, u, v
    cdef u64 m, acc
    for u in range(n):
        indeg[u] = 0
    for u in range(n):
        m = out[u]
        while m:
            v = _ctz(m)
            indeg[v] += 1
            m &= m - 1
    for u in range(n):
        if indeg[u] == 0:
            order[tail] = u
            tail += 1
    while head < tail:
        u = order[head]
        head += 1
        m = out[u]
        while m:
            v = _ctz(m)
            indeg[v] -= 1
            if indeg[v] == 0:
                order[tail] = v
                tail += 1
            m &= m - 1
    if tail != n:
        return 0
    for head in range(n - 1, -1, -1):
        u = order[head]
        acc = 0
        m = out[u]
        while m:
            v = _ctz(m)
            acc |= (<u64>1 << v) | reach[v]
            m &= m - 1
        reach[u] = acc
    return 1


cdef u64 _flippable(int n, int m, int* tails, int* heads, u64 state, int* ok) nogil:
    cdef u64 out[MAXN]
    cdef u64 reach[MAXN]
    cdef int src[MAXN]
    cdef int dst[MAXN]
    cdef int i, a, b
    cdef u64 others, flips = 0
    for i in range(n):
        out[i] = 0
    for i in range(m):
        if (state >> i) & 1:
            a = heads[i]
            b = tails[i]
        else:
            a = tails[i]
            b = heads[i]
        src[i] = a
        dst[i] = b
        out[a] |= <u64>1 << b
    if not _reach(n, out, reach):
        ok[0] = 0
        return 0
    ok[0] = 1
    for i in range(m):
        a = src[i]
        b = dst[i]
        others = out[a] & ~(<u64>1 << b)
        while others:
            if (reach[_ctz(others)] >> b) & 1:
                break
            others &= others - 1
        if not others:
            flips |= <u64>1 << i
    return flips


def flippable_mask(int n, tails, heads, reversed_mask):
    cdef int m = len(tails)
    if n > MAXN or m > 63:
        from . import _pykernels
        return _pykernels.flippable_mask(n, tails, heads, reversed_mask)
    cdef int ct[MAXN]
    cdef int ch[MAXN]
    cdef int i, ok
    for i in range(m):
        ct[i] = tails[i]
        ch[i] = heads[i]
    cdef u64 flips = _flippable(n, m, ct, ch, <u64>reversed_mask, &ok)
    if not ok:
        raise ValueError("reorientation is not acyclic")
    return flips


def is_acyclic(int n, tails, heads, reversed_mask):
    cdef int m = len(tails)
    if n > MAXN or m > 63:
        from . import _pykernels
        return _pykernels.is_acyclic(n, tails, heads, reversed_mask)
    cdef u64 out[MAXN]
    cdef u64 reach[MAXN]
    cdef int i
    cdef u64 state = <u64>reversed_mask
    for i in range(n):
        out[i] = 0
    for i in range(m):
        if (state >> i) & 1:
            out[<int>heads[i]] |= <u64>1 << <int>tails[i]
        else:
            out[<int>tails[i]] |= <u64>1 << <int>heads[i]
    return bool(_reach(n, out, reach))


def acyclic_reorientations(int n, tails, heads, long long limit=-1):
    cdef int m = len(tails)
    if n > MAXN or m > 63:
        from . import _pykernels
        return _pykernels.acyclic_reorientations(n, tails, heads, limit)
    cdef int ct[MAXN]
    cdef int ch[MAXN]
    cdef int i, ok
    for i in range(m):
        ct[i] = tails[i]
        ch[i] = heads[i]
    cdef u64 state, flips, low, nxt
    cdef list queue = [0]
    cdef set seen = {0}
    cdef Py_ssize_t qh = 0
    cdef unsigned char* dense = NULL
    if m <= 26:
        dense = <unsigned char*> calloc((<size_t>1) << m, 1)
        dense[0] = 1
    try:
        while qh < len(queue):
            state = queue[qh]
            qh += 1
            flips = _flippable(n, m, ct, ch, state, &ok)
            while flips:
                low = flips & (~flips + 1)
                nxt = state ^ low
                if dense != NULL:
                    if not dense[nxt]:
                        dense[nxt] = 1
                        queue.append(nxt)
                elif nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
                flips ^= low
            if 0 <= limit < len(queue):
                return None
    finally:
        if dense != NULL:
            free(dense)
    queue.sort()
    return queue


# ---------------------------------------------------------------- Hamiltonian search

cdef class _Ham:
    cdef int nv, s, cyc, plen
    cdef long long budget
    cdef int* start
    cdef int* nbr
    cdef char* visited
    cdef int* freec
    cdef int* path
    cdef char* mark
    cdef int* stack
    cdef int* cand
    cdef int* rank
    cdef int maxdeg
    cdef unsigned char* adjmat

    def __cinit__(self, adj, int cyc):
        cdef int nv = len(adj), i, j, k = 0, total = 0
        self.nv = nv
        self.cyc = cyc
        self.budget = 0
        self.rank = <int*> malloc(nv * sizeof(int))
        self.maxdeg = 1
        for a in adj:
            total += len(a)
            if len(a) > self.maxdeg:
                self.maxdeg = len(a)
        self.cand = <int*> malloc(<size_t>nv * self.maxdeg * sizeof(int))
        self.start = <int*> malloc((nv + 1) * sizeof(int))
        self.nbr = <int*> malloc((total + 1) * sizeof(int))
        self.visited = <char*> calloc(nv, 1)
        self.freec = <int*> malloc(nv * sizeof(int))
        self.path = <int*> malloc(nv * sizeof(int))
        self.mark = <char*> calloc(nv, 1)
        self.stack = <int*> malloc(nv * sizeof(int))
        self.adjmat = <unsigned char*> calloc(<size_t>nv * nv, 1)
        for i in range(nv):
            self.start[i] = k
            for j in adj[i]:
                self.nbr[k] = j
                self.adjmat[<size_t>i * nv + j] = 1
                k += 1
        self.start[nv] = k

    def __dealloc__(self):
        free(self.start)
        free(self.nbr)
        free(self.visited)
        free(self.freec)
        free(self.path)
        free(self.mark)
        free(self.stack)
        free(self.adjmat)
        free(self.cand)
        free(self.rank)

    cdef inline bint adjacent(self, int a, int b) nogil:
        return self.adjmat[<size_t>a * self.nv + b] != 0

    cdef bint viable(self, int c) nogil:
        cdef int remaining = self.nv - self.plen, w, ends, usable, top, u, k, count
        if remaining == 0:
            return True
        for w in range(self.nv):
            if self.visited[w]:
                continue
            ends = 1 if self.adjacent(w, c) else 0
            if self.cyc and c != self.s and self.adjacent(w, self.s):
                ends += 1
            usable = self.freec[w] + ends
            if self.cyc:
                if remaining == 1:
                    if not (self.adjacent(w, c) and self.adjacent(w, self.s)):
                        return False
                elif usable < 2:
                    return False
            elif usable < 1:
                return False
        memset(self.mark, 0, self.nv)
        self.mark[c] = 1
        top = 0
        self.stack[top] = c
        top += 1
        count = 0
        while top > 0:
            top -= 1
            u = self.stack[top]
            for k in range(self.start[u], self.start[u + 1]):
                w = self.nbr[k]
                if not self.visited[w] and not self.mark[w]:
                    self.mark[w] = 1
                    count += 1
                    self.stack[top] = w
                    top += 1
        return count == remaining

    cdef void push(self, int w) nogil:
        cdef int k
        self.visited[w] = 1
        self.path[self.plen] = w
        self.plen += 1
        for k in range(self.start[w], self.start[w + 1]):
            self.freec[self.nbr[k]] -= 1

    cdef void pop(self, int w) nogil:
        cdef int k
        for k in range(self.start[w], self.start[w + 1]):
            self.freec[self.nbr[k]] += 1
        self.plen -= 1
        self.visited[w] = 0

    cdef int rec(self) except -1:
        cdef int c = self.path[self.plen - 1], k, w, ends, nforced = 0, forced = -1
        self.budget -= 1
        if self.budget < 0:
            raise SearchBudgetExceeded("Hamiltonian search exceeded its node budget")
        if self.plen == self.nv:
            return 1 if (not self.cyc or self.adjacent(c, self.s)) else 0
        if self.cyc and self.plen > 1:
            for k in range(self.start[c], self.start[c + 1]):
                w = self.nbr[k]
                if self.visited[w]:
                    continue
                ends = 1 + (1 if (c != self.s and self.adjacent(w, self.s)) else 0)
                if self.freec[w] + ends == 2:
                    nforced += 1
                    forced = w
            if nforced > 1:
                return 0
        if forced >= 0:
            self.push(forced)
            if self.viable(forced) and self.rec():
                return 1
            self.pop(forced)
            return 0
        cdef int* opts = self.cand + <size_t>self.plen * self.maxdeg
        cdef int cnt = 0, i, j, key
        for k in range(self.start[c], self.start[c + 1]):
            w = self.nbr[k]
            if self.visited[w]:
                continue
            # insertion sort by (unvisited neighbours, index)
            key = self.freec[w]
            j = cnt
            while j > 0 and (self.freec[opts[j - 1]] > key or (self.freec[opts[j - 1]] == key and self.rank[opts[j - 1]] > self.rank[w])):
                opts[j] = opts[j - 1]
                j -= 1
            opts[j] = w
            cnt += 1
        for i in range(cnt):
            w = opts[i]
            self.push(w)
            if self.viable(w) and self.rec():
                return 1
            self.pop(w)
        return 0

    def set_rank(self, rank, long long budget):
        cdef int i
        for i in range(self.nv):
            self.rank[i] = rank[i]
        self.budget = budget

    def run(self, int s):
        cdef int i
        self.s = s
        self.plen = 0
        for i in range(self.nv):
            self.visited[i] = 0
            self.freec[i] = self.start[i + 1] - self.start[i]
        self.push(s)
        if not self.viable(s):
            return None
        if self.rec():
            return [self.path[i] for i in range(self.plen)]
        return None


def hamiltonian_search(adj, bint cycle, long long max_nodes=50_000_000):
    pre = _precheck(adj, cycle)
    if pre is not False:
        return pre
    cdef int nv = len(adj)
    h = _Ham(adj, 1 if cycle else 0)

    def core(rank, limit):
        h.set_rank(rank, limit)
        starts = [0] if cycle else sorted(range(nv), key=rank.__getitem__)
        for s in starts:
            result = h.run(s)
            if result is not None:
                return result
        return None

    return restarting(core, nv, max_nodes)
