"""Pure-Python Whitman kernel; reference twin of ``_whitman.pyx``.

Both kernels decide ``u <= v`` in the free lattice over a term store with
an explicit frame stack and a three-state memo keyed on id pairs.  A frame
walks a list of subgoals in one of five modes:

    ALL_U  every child of u is <= v           (u is a join)
    ALL_V  u is <= every child of v           (v is a meet)
    ANY_U  some child of u is <= v            (meet <= generator)
    ANY_V  u is <= some child of v            (generator <= join)
    ANY_W  some child of u is <= v, or u is <= some child of v   (meet <= join)
"""

NLEQ, LEQ, BUSY = 0, 1, 2
_VAR, _JOIN, _MEET = 0, 1, 2
ALL_U, ALL_V, ANY_U, ANY_V, ANY_W = range(5)


class KernelInvariantError(RuntimeError):
    pass


class WhitmanKernel:
    backend = "python"

    def __init__(self, store):
        self._kind = store._kind
        self._var = store._var
        self._kids = store._kids
        self._memo = {}

    def __len__(self):
        return len(self._memo)

    def clear(self):
        self._memo.clear()

    def _open(self, u, v, stack):
        """Immediate verdict, or push a frame and return -1."""
        if u == v:
            return LEQ
        ku = self._kind[u]
        kv = self._kind[v]
        if ku == _JOIN:
            mode, n = ALL_U, len(self._kids[u])
        elif kv == _MEET:
            mode, n = ALL_V, len(self._kids[v])
        elif ku == _VAR:
            if kv == _VAR:
                return LEQ if self._var[u] == self._var[v] else NLEQ
            mode, n = ANY_V, len(self._kids[v])
        elif kv == _VAR:
            mode, n = ANY_U, len(self._kids[u])
        else:
            mode, n = ANY_W, len(self._kids[u]) + len(self._kids[v])
        self._memo[(u, v)] = BUSY
        stack.append([u, v, mode, 0, n])
        return -1

    def leq(self, u, v):
        memo = self._memo
        r = memo.get((u, v))
        if r is not None:
            if r == BUSY:
                raise KernelInvariantError(f"re-entered pending query ({u}, {v})")
            return r == LEQ
        stack = []
        try:
            r = self._open(u, v, stack)
            if r >= 0:
                memo[(u, v)] = r
                return r == LEQ
            return self._run(stack) == LEQ
        except BaseException:
            for fr in stack:
                memo.pop((fr[0], fr[1]), None)
            raise

    def _run(self, stack):
        memo = self._memo
        kids = self._kids
        res = -1
        while True:
            fr = stack[-1]
            fu, fv, mode, idx, n = fr
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
                while idx < n:
                    if mode == ALL_U or mode == ANY_U:
                        a, b = kids[fu][idx], fv
                    elif mode == ALL_V or mode == ANY_V:
                        a, b = fu, kids[fv][idx]
                    else:
                        nu = len(kids[fu])
                        if idx < nu:
                            a, b = kids[fu][idx], fv
                        else:
                            a, b = fu, kids[fv][idx - nu]
                    r = memo.get((a, b))
                    if r is None:
                        r = self._open(a, b, stack)
                        if r == -1:
                            pushed = True
                            break
                        memo[(a, b)] = r
                    elif r == BUSY:
                        raise KernelInvariantError(f"cycle through pending query ({a}, {b})")
                    if r == want:
                        final = r
                        break
                    idx += 1
                fr[3] = idx
                if pushed:
                    continue
                if final == -1:
                    final = LEQ if want == NLEQ else NLEQ
            memo[(fu, fv)] = final
            stack.pop()
            if not stack:
                return final
            res = final
