from concurrent.futures import ThreadPoolExecutor
import json
import os

from .QSPException import QSPGuardError
from .constants import THREADS_ENV


def double_factorial(k):
    '''
    (k)!! for odd k, with (-1)!! = 1
    '''
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


def as_int(value, name):
    '''
    NOT MEANT TO BE CALLED BY THE END USER

    Integer setting from a flag, the cache or the environment; bad text is a guard error.
    '''
    try:
        return int(value)
    except (TypeError, ValueError):
        raise QSPGuardError(f'{name} must be an integer, got {value!r}') from None


def resolve_threads(threads=None):
    '''
    NOT MEANT TO BE CALLED BY THE END USER

    Number of worker threads: explicit value, then the environment, then the CPU count.
    '''
    if threads is None:
        threads = os.getenv(THREADS_ENV)
    if threads is None:
        return os.cpu_count() or 1
    threads = as_int(threads, 'threads')
    if threads < 1:
        raise QSPGuardError(f'threads must be positive, got {threads}')
    return threads


def ordered_map(func, items, threads=None):
    '''
    NOT MEANT TO BE CALLED BY THE END USER

    Map over items with a thread pool, returning results in input order.

    Parameters
    ----------
    func: callable
        Function applied to every item
    items: iterable
        The inputs
    threads: int or None (default None)
        Worker count; 1 runs inline
    '''
    items = list(items)
    threads = resolve_threads(threads)
    if threads == 1 or len(items) < 2:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def dump_json(payload):
    '''
    Serialize with a stable layout
    '''
    return json.dumps(payload, indent=2, sort_keys=False)


def require(condition, message):
    '''
    NOT MEANT TO BE CALLED BY THE END USER

    Raise a guard error when a precondition does not hold.
    '''
    if not condition:
        raise QSPGuardError(message)
