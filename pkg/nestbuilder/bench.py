'''Step counts over instance families

A manifest lists one family per line::

    # comment
    random z=50,100 seeds=1,2,3
    tree z=200 seeds=4
    rough-rectangle z=200,800,3200 s=sqrt
    fixture name=plus,line-4,spiral

``s`` of a rough rectangle is an integer, ``sqrt`` for ⌈10√z⌉ or
``pow0.8`` for ⌈z^0.8⌉.
'''
import math
import os
from concurrent.futures import ThreadPoolExecutor
from logging import getLogger
from typing import Dict, Iterable, List, NamedTuple, Optional

from megfile import smart_open
from tqdm import tqdm

from nestbuilder.engine import World
from nestbuilder.errors import ControllerError, InstanceSyntaxError, full_error_message
from nestbuilder.fixtures import fixture
from nestbuilder.instances import InstanceSpec, gen_random_connected, gen_rough_rectangle, gen_tree
from nestbuilder.procedures import build_nest
from nestbuilder.trace import Trace
from nestbuilder.utils import get_env_int

__all__ = [
    'DEFAULT_MAX_WORKERS',
    'LOWER_BOUND_DIVISOR',
    'BenchCase',
    'BenchRow',
    'parse_manifest',
    'load_manifest',
    'resolve_s_prime',
    'run_case',
    'run_bench',
    'format_table',
]

_logger = getLogger(__name__)

DEFAULT_MAX_WORKERS = (os.cpu_count() or 1) * 2
# rough rectangles need at least s * z / LOWER_BOUND_DIVISOR steps
LOWER_BOUND_DIVISOR = 120
COLUMNS = ('family', 'label', 'z', 's', 'steps', 'ratio', 'nest_ok')


class BenchCase(NamedTuple):
    family: str
    z: int = 0
    seed: Optional[int] = None
    s_prime: Optional[int] = None
    name: str = ''

    def instance(self) -> InstanceSpec:
        if self.family == 'random':
            return gen_random_connected(self.z, self.seed)
        if self.family == 'tree':
            return gen_tree(self.z, self.seed)
        if self.family == 'rough-rectangle':
            return gen_rough_rectangle(self.z, self.s_prime)
        return fixture(self.name)


class BenchRow(NamedTuple):
    family: str
    label: str
    z: int
    s: int
    steps: int
    ratio: float
    nest_ok: bool
    violations: int


def resolve_s_prime(value: str, z: int) -> int:
    if value == 'sqrt':
        return math.ceil(10 * math.sqrt(z))
    if value == 'pow0.8':
        return math.ceil(z**0.8)
    return int(value)


def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.split(',') if part]


def _parse_line(line: str, lineno: int) -> List[BenchCase]:
    family, *pairs = line.split()
    params: Dict[str, str] = {}
    for pair in pairs:
        key, sep, value = pair.partition('=')
        if not sep:
            raise InstanceSyntaxError(
                'expected key=value, got %r' % pair, lineno,
                line.index(pair) + 1)
        params[key] = value
    try:
        if family in ('random', 'tree'):
            return [
                BenchCase(family, z=z, seed=seed)
                for z in _int_list(params['z'])
                for seed in _int_list(params.get('seeds', '0'))
            ]
        if family == 'rough-rectangle':
            return [
                BenchCase(
                    family,
                    z=z,
                    s_prime=resolve_s_prime(params.get('s', 'sqrt'), z))
                for z in _int_list(params['z'])
            ]
        if family == 'fixture':
            return [
                BenchCase(family, name=name)
                for name in params['name'].split(',')
                if name
            ]
    except KeyError as error:
        raise InstanceSyntaxError(
            'family %s needs %s' % (family, error), lineno, 1)
    except ValueError as error:
        raise InstanceSyntaxError(str(error), lineno, 1)
    raise InstanceSyntaxError('unknown family %r' % family, lineno, 1)


def parse_manifest(text: str) -> List[BenchCase]:
    cases = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        cases.extend(_parse_line(line, lineno))
    return cases


def load_manifest(path: str) -> List[BenchCase]:
    with smart_open(path, 'r') as reader:
        return parse_manifest(reader.read())


def run_case(case: BenchCase, monitors: bool = False) -> BenchRow:
    spec = case.instance()
    world = World(
        spec.field.full, spec.start, trace=Trace(keep=False, digest=False))
    try:
        result = build_nest(world, monitors)
    except ControllerError as error:
        _logger.error('%s failed: %s' % (spec.label, full_error_message(error)))
        raise
    area = result.s * result.z
    ratio = result.steps / area if area else 0.0
    _logger.debug(
        '%s: z=%d s=%d steps=%d' %
        (spec.label, result.z, result.s, result.steps))
    return BenchRow(
        case.family, spec.label, result.z, result.s, result.steps, ratio,
        result.nest_ok, len(result.violations))


def run_bench(
        cases: List[BenchCase],
        max_workers: Optional[int] = None,
        monitors: bool = False,
        progress_bar: bool = False) -> List[BenchRow]:
    '''Rows in manifest order'''
    if max_workers is None:
        max_workers = get_env_int(
            'NESTBUILDER_MAX_WORKERS', DEFAULT_MAX_WORKERS)
    rows = []
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        with tqdm(total=len(cases), ascii=True,
                  disable=not progress_bar) as tbar:
            for row in executor.map(lambda case: run_case(case, monitors),
                                    cases):
                rows.append(row)
                tbar.update(1)
    return rows


def _summary(family: str, rows: List[BenchRow]) -> str:
    ratios = [row.ratio for row in rows if row.ratio > 0]
    parts = ['# summary', 'family=%s' % family, 'cases=%d' % len(rows)]
    if ratios:
        high, low = max(ratios), min(ratios)
        parts.append('max_ratio=%.6f' % high)
        parts.append('min_ratio=%.6f' % low)
        parts.append('spread=%.3f' % (high / low))
    parts.append(
        'nest_ok=%s' % ('all' if all(row.nest_ok for row in rows) else 'no'))
    if family == 'rough-rectangle':
        bound = all(
            row.steps * LOWER_BOUND_DIVISOR >= row.s * row.z for row in rows)
        parts.append('lower_bound=%s' % ('ok' if bound else 'fail'))
    return ' '.join(parts)


def format_table(rows: Iterable[BenchRow], delimiter: str = ',') -> List[str]:
    rows = list(rows)
    lines = [delimiter.join(COLUMNS)]
    families: Dict[str, List[BenchRow]] = {}
    for row in rows:
        lines.append(
            delimiter.join([
                row.family, row.label,
                str(row.z),
                str(row.s),
                str(row.steps),
                '%.6f' % row.ratio,
                'true' if row.nest_ok else 'false'
            ]))
        families.setdefault(row.family, []).append(row)
    for family, members in families.items():
        lines.append(_summary(family, members))
    return lines
