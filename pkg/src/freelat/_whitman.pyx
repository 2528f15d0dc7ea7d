# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled Whitman kernel.  Same algorithm and frame modes as ``_whitman_py``."""

from cython.operator cimport dereference as deref
from libc.stdint cimport uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

from freelat._whitman_py import KernelInvariantError

cdef enum:
    NLEQ = 0
    LEQ = 1
    BUSY = 2

cdef enum:
    K_VAR = 0
    K_JOIN = 1
    K_MEET = 2

cdef enum:
    ALL_U = 0
    ALL_V = 1
    ANY_U = 2
    ANY_V = 3
    ANY_W = 4

cdef struct Frame:
    int u
    int v
    int mode
    int idx
    int n


cdef inline uint64_t pair_key(int u, int v) nogil:
    return (<uint64_t>u << 32) | <uint64_t><unsigned int>v


cdef inline int deref_second(unordered_map[uint64_t, char].iterator it):
    return <int>deref(it).second


cdef class WhitmanKernel:
    cdef object _kind_src, _var_src, _kids_src
    cdef vector[int] kind
    cdef vector[int] var
    cdef vector[int] start
    cdef vector[int] count
    cdef vector[int] flat
    cdef unordered_map[uint64_t, char] memo
    cdef vector[Frame] stack

    backend = "cython"

    def __init__(self, store):
        self._kind_src = store._kind
        self._var_src = store._var
        self._kids_src = store._kids

    def __len__(self):
        return self.memo.size()

    def clear(self):
        self.memo.clear()

    cdef void _sync(self):
        cdef Py_ssize_t i, total = len(self._kind_src)
        cdef tuple kids
        for i in range(<Py_ssize_t>self.kind.size(), total):
            self.kind.push_back(self._kind_src[i])
            self.var.push_back(self._var_src[i])
            kids = self._kids_src[i]
            self.start.push_back(self.flat.size())
            self.count.push_back(len(kids))
            for c in kids:
                self.flat.push_back(c)

    cdef int _open(self, int u, int v):
        cdef int ku, kv, mode, n
        cdef Frame fr
        if u == v:
            return LEQ
        ku = self.kind[u]
        kv = self.kind[v]
        if ku == K_JOIN:
            mode = ALL_U
            n = self.count[u]
        elif kv == K_MEET:
            mode = ALL_V
            n = self.count[v]
        elif ku == K_VAR:
            if kv == K_VAR:
                return LEQ if self.var[u] == self.var[v] else NLEQ
            mode = ANY_V
            n = self.count[v]
        elif kv == K_VAR:
            mode = ANY_U
            n = self.count[u]
        else:
            mode = ANY_W
            n = self.count[u] + self.count[v]
        self.memo[pair_key(u, v)] = BUSY
        fr.u = u
        fr.v = v
        fr.mode = mode
        fr.idx = 0
        fr.n = n
        self.stack.push_back(fr)
        return -1

    cdef void _abort(self):
        cdef size_t k
        for k in range(self.stack.size()):
            self.memo.erase(pair_key(self.stack[k].u, self.stack[k].v))
        self.stack.clear()

    def leq(self, int u, int v):
        cdef int r
        cdef unordered_map[uint64_t, char].iterator it
        self._sync()
        if u < 0 or v < 0 or <size_t>u >= self.kind.size() or <size_t>v >= self.kind.size():
            raise IndexError(f"term id out of range: ({u}, {v})")
        it = self.memo.find(pair_key(u, v))
        if it != self.memo.end():
            r = deref_second(it)
            if r == BUSY:
                raise KernelInvariantError(f"re-entered pending query ({u}, {v})")
            return r == LEQ
        self.stack.clear()
        r = self._open(u, v)
        if r >= 0:
            self.memo[pair_key(u, v)] = r
            return r == LEQ
        r = self._run()
        if r < 0:
            self._abort()
            raise KernelInvariantError("cycle through a pending query")
        return r == LEQ

    cdef int _run(self):
        cdef int res = -1, final, want, r, a, b, nu, mode, idx
        cdef bint pushed
        cdef Frame* fr
        cdef unordered_map[uint64_t, char].iterator it
        while True:
            fr = &self.stack.back()
            mode = fr.mode
            idx = fr.idx
            want = NLEQ if mode <= ALL_V else LEQ
            final = -1
            if res != -1:
                if res == want:
                    final = res
                else:
                    idx += 1
                res = -1
            if final == -1:
                pushed = False
                while idx < fr.n:
                    if mode == ALL_U or mode == ANY_U:
                        a = self.flat[self.start[fr.u] + idx]
                        b = fr.v
                    elif mode == ALL_V or mode == ANY_V:
                        a = fr.u
                        b = self.flat[self.start[fr.v] + idx]
                    else:
                        nu = self.count[fr.u]
                        if idx < nu:
                            a = self.flat[self.start[fr.u] + idx]
                            b = fr.v
                        else:
                            a = fr.u
                            b = self.flat[self.start[fr.v] + idx - nu]
                    it = self.memo.find(pair_key(a, b))
                    if it == self.memo.end():
                        fr.idx = idx
                        r = self._open(a, b)
                        if r == -1:
                            pushed = True
                            break
                        self.memo[pair_key(a, b)] = r
                    else:
                        r = deref_second(it)
                        if r == BUSY:
                            return -1
                    if r == want:
                        final = r
                        break
                    idx += 1
                if pushed:
                    continue
                fr.idx = idx
                if final == -1:
                    final = LEQ if want == NLEQ else NLEQ
            self.memo[pair_key(fr.u, fr.v)] = final
            self.stack.pop_back()
            if self.stack.empty():
                return final
            res = final
