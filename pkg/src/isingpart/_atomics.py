"""Lock-free atomic operations on int64 array cells for numba nopython code.

numba has no CPU atomics, so these intrinsics emit LLVM ``atomicrmw`` and
atomic ``load`` instructions directly. They are only callable from jitted
functions.
"""

from numba import types
from numba.core import cgutils
from numba.extending import intrinsic


def _cell_pointer(context, builder, arr_type, arr, idx):
    ary = context.make_array(arr_type)(context, builder, arr)
    return cgutils.get_item_pointer(context, builder, arr_type, ary, [idx], wraparound=False)


def _check(arr):
    return isinstance(arr, types.Array) and arr.dtype == types.int64 and arr.ndim == 1


@intrinsic
def atomic_add(typingctx, arr, idx, val):
    """``arr[idx] += val`` as one sequentially consistent RMW; returns the old value."""
    if not _check(arr):
        return None
    sig = types.int64(arr, types.intp, types.int64)

    def codegen(context, builder, signature, args):
        ptr = _cell_pointer(context, builder, signature.args[0], args[0], args[1])
        return builder.atomic_rmw("add", ptr, args[2], "seq_cst")

    return sig, codegen


@intrinsic
def atomic_load(typingctx, arr, idx):
    """Sequentially consistent read of ``arr[idx]``."""
    if not _check(arr):
        return None
    sig = types.int64(arr, types.intp)

    def codegen(context, builder, signature, args):
        ptr = _cell_pointer(context, builder, signature.args[0], args[0], args[1])
        return builder.load_atomic(ptr, "seq_cst", 8)

    return sig, codegen
