'''Instances: text format, generators

An instance file draws the field with North at the top::

    # label: L-shape
    origin: 3 -2
    #...
    S###

``#`` is a brick, ``.`` an empty cell and ``S`` the robot's start on a
brick. ``origin`` gives the coordinates of the bottom-left character and
defaults to ``0 0``. Lines starting with ``# `` are comments, those of the
form ``# key: value`` are kept as metadata.
'''
import math
import random
from logging import getLogger
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from megfile import smart_open

from nestbuilder.errors import InfeasibleParameters, InstanceSyntaxError, NotConnected, StartNotFull
from nestbuilder.grid import Cell, Field, components, neighbors, order_key

__all__ = [
    'FULL',
    'EMPTY',
    'START',
    'START_EMPTY',
    'InstanceSpec',
    'make_instance',
    'format_grid',
    'parse_instance',
    'serialize_instance',
    'load_instance',
    'save_instance',
    'gen_random_connected',
    'gen_rough_rectangle',
    'rough_rectangle_width',
    'gen_line',
    'gen_tree',
]

_logger = getLogger(__name__)

FULL = '#'
EMPTY = '.'
START = 'S'
START_EMPTY = 's'
_ORIGIN = 'origin:'
_COMMENT = '# '


class InstanceSpec(NamedTuple):
    field: Field
    start: Cell
    label: str = ''
    seed: Optional[int] = None
    family: str = ''
    meta: Tuple[Tuple[str, str], ...] = ()


def make_instance(
        cells: Iterable[Cell],
        start: Optional[Cell] = None,
        label: str = '',
        seed: Optional[int] = None,
        family: str = '',
        meta: Iterable[Tuple[str, str]] = ()) -> InstanceSpec:
    '''Check and build an instance, the start defaults to the ≺-minimal cell

    :raises NotConnected: when the cells are not 4-connected
    :raises StartNotFull: when start is not one of the cells
    '''
    field = Field(cells)
    if len(field) == 0:
        raise NotConnected('Instance has no full cell')
    parts = components(field.full)
    if len(parts) > 1:
        raise NotConnected(
            'Instance %r has %d components' % (label or 'unnamed', len(parts)))
    if start is None:
        start = min(field.full, key=order_key)
    start = Cell(*start)
    if start not in field:
        raise StartNotFull('Start %r is not a full cell' % (start,))
    return InstanceSpec(field, start, label, seed, family, tuple(meta))


def format_grid(
        symbols: Dict[Cell, str], box: Tuple[int, int, int, int]) -> List[str]:
    '''Draw symbols inside box = (min_x, min_y, max_x, max_y), other cells
    are empty'''
    min_x, min_y, max_x, max_y = box
    lines = []
    if (min_x, min_y) != (0, 0):
        lines.append('%s %d %d' % (_ORIGIN, min_x, min_y))
    for y in range(max_y, min_y - 1, -1):
        lines.append(''.join(
            symbols.get(Cell(x, y), EMPTY) for x in range(min_x, max_x + 1)))
    return lines


def serialize_instance(spec: InstanceSpec) -> str:
    lines = []
    if spec.label:
        lines.append('%slabel: %s' % (_COMMENT, spec.label))
    if spec.family:
        lines.append('%sfamily: %s' % (_COMMENT, spec.family))
    if spec.seed is not None:
        lines.append('%sseed: %d' % (_COMMENT, spec.seed))
    for key, value in spec.meta:
        lines.append('%s%s: %s' % (_COMMENT, key, value))
    symbols = {cell: FULL for cell in spec.field.full}
    symbols[spec.start] = START
    lines.extend(format_grid(symbols, spec.field.bounding_box()))
    return '\n'.join(lines) + '\n'


def _parse_origin(text: str, lineno: int) -> Tuple[int, int]:
    parts = text[len(_ORIGIN):].split()
    if len(parts) != 2:
        raise InstanceSyntaxError('origin needs two integers', lineno, 1)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise InstanceSyntaxError(
            'origin needs two integers, got %r' % text, lineno, 1)


def parse_instance(text: str) -> InstanceSpec:
    meta: Dict[str, str] = {}
    origin = (0, 0)
    rows: List[Tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not rows and not line:
            continue
        if line.startswith(_COMMENT):
            key, sep, value = line[len(_COMMENT):].partition(':')
            if sep:
                meta[key.strip()] = value.strip()
            continue
        if line.startswith(_ORIGIN):
            if rows:
                raise InstanceSyntaxError(
                    'origin must come before the rows', lineno, 1)
            origin = _parse_origin(line, lineno)
            continue
        rows.append((lineno, line))
    while rows and not rows[-1][1]:
        rows.pop()
    if not rows:
        raise InstanceSyntaxError('no rows', len(text.splitlines()), 1)

    cells = []
    start = None
    height = len(rows)
    for row_index, (lineno, line) in enumerate(rows):
        if not line:
            raise InstanceSyntaxError('blank row', lineno, 1)
        y = origin[1] + height - 1 - row_index
        for column, char in enumerate(line):
            cell = Cell(origin[0] + column, y)
            if char == FULL:
                cells.append(cell)
            elif char == START:
                if start is not None:
                    raise InstanceSyntaxError(
                        'second start, the first is at %r' % (start,), lineno,
                        column + 1)
                start = cell
                cells.append(cell)
            elif char == START_EMPTY:
                raise StartNotFull(
                    'line %d, column %d: robot must start on a full cell' %
                    (lineno, column + 1))
            elif char != EMPTY:
                raise InstanceSyntaxError(
                    'unexpected character %r' % char, lineno, column + 1)

    seed = meta.pop('seed', None)
    if seed is not None:
        try:
            seed = int(seed)
        except ValueError:
            raise InstanceSyntaxError('seed is not an integer: %r' % seed, 1, 1)
    label = meta.pop('label', '')
    family = meta.pop('family', '')
    return make_instance(
        cells, start, label, seed, family, tuple(sorted(meta.items())))


def load_instance(path: str) -> InstanceSpec:
    with smart_open(path, 'r') as reader:
        spec = parse_instance(reader.read())
    _logger.debug(
        'loaded instance %s: %d cells, start %r' %
        (path, len(spec.field), spec.start))
    return spec


def save_instance(spec: InstanceSpec, path: str) -> None:
    with smart_open(path, 'w') as writer:
        writer.write(serialize_instance(spec))


def _check_size(z: int) -> None:
    if z < 1:
        raise InfeasibleParameters('Instance size must be positive: %r' % z)


def gen_random_connected(z: int, seed: int) -> InstanceSpec:
    '''Grow a field from the origin by adding uniformly chosen frontier
    cells'''
    _check_size(z)
    rng = random.Random(seed)
    cells = {Cell(0, 0)}
    frontier = list(neighbors(Cell(0, 0)))
    queued = set(frontier)
    while len(cells) < z:
        index = rng.randrange(len(frontier))
        frontier[index], frontier[-1] = frontier[-1], frontier[index]
        cell = frontier.pop()
        cells.add(cell)
        for other in neighbors(cell):
            if other not in cells and other not in queued:
                queued.add(other)
                frontier.append(other)
    return make_instance(
        cells, label='random-%d-%d' % (z, seed), seed=seed, family='random')


def gen_tree(z: int, seed: int) -> InstanceSpec:
    '''Random field without cycles: every new cell touches exactly one
    brick, so the field is full of leaves'''
    _check_size(z)
    rng = random.Random(seed)
    cells = {Cell(0, 0)}
    frontier = list(neighbors(Cell(0, 0)))
    queued = set(frontier)
    while len(cells) < z:
        index = rng.randrange(len(frontier))
        frontier[index], frontier[-1] = frontier[-1], frontier[index]
        cell = frontier.pop()
        # a cell touching two bricks never becomes valid again
        if sum(1 for other in neighbors(cell) if other in cells) != 1:
            continue
        cells.add(cell)
        for other in neighbors(cell):
            if other not in cells and other not in queued:
                queued.add(other)
                frontier.append(other)
    return make_instance(
        cells, label='tree-%d-%d' % (z, seed), seed=seed, family='tree')


def rough_rectangle_width(z: int, s_prime: int) -> int:
    '''Row length b of the rough rectangle'''
    if z < 2 or s_prime <= 0 or s_prime >= z:
        raise InfeasibleParameters(
            'Rough rectangle needs 0 < s\' < z, got z=%r s\'=%r' % (z, s_prime))
    threshold = math.ceil(10 * math.sqrt(z))
    width = s_prime if s_prime >= 10 * math.sqrt(z) else threshold
    return min(width, z)


def gen_rough_rectangle(z: int, s_prime: int) -> InstanceSpec:
    '''a full rows of b cells, the remaining z - ab cells on top of the
    West-most columns'''
    width = rough_rectangle_width(z, s_prime)
    rows = z // width
    extra = z - rows * width
    cells = [Cell(x, y) for y in range(rows) for x in range(width)]
    cells.extend(Cell(x, rows) for x in range(extra))
    return make_instance(
        cells,
        label='rough-rectangle-%d-%d' % (z, s_prime),
        family='rough-rectangle',
        meta=(('s_prime', str(s_prime)),))


def gen_line(k: int) -> InstanceSpec:
    if k < 1:
        raise InfeasibleParameters('Line length must be positive: %r' % k)
    return make_instance(
        [Cell(x, 0) for x in range(k)], label='line-%d' % k, family='fixture')
