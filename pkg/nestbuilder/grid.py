'''Geometry of the oriented grid

Cells are integer pairs, ordered by the total order ``≺`` (row first, then
column, see :func:`cell_less`). Every "first", "closest" or "minimal" choice
made anywhere in the package breaks ties with this order.
'''
from collections import deque
from enum import IntEnum
from logging import getLogger
from typing import AbstractSet, Collection, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from nestbuilder.errors import EmptyCellError, EmptySetError, NegativeValueError

__all__ = [
    'Cell',
    'Direction',
    'DIRECTIONS',
    'CellClass',
    'Field',
    'DiscLayout',
    'order_key',
    'cell_less',
    'manhattan',
    'neighbor',
    'neighbors',
    'direction_between',
    'span',
    'components',
    'is_connected',
    'classify_cell',
    'is_special',
    'disc_size',
    'disc_radius',
    'disc_cells',
    'ring_cells',
    'rough_disc_cells',
    'rough_disc_span',
    'max_size_for_span',
    'max_size_in_span_box',
    'minimal_span',
    'is_nest',
    'set_distance',
    'gap_width',
    'nearest',
]

_logger = getLogger(__name__)


class Cell(NamedTuple):
    x: int
    y: int

    def __repr__(self):
        return '(%d,%d)' % (self.x, self.y)


class Direction(IntEnum):
    NORTH = 0
    EAST = 1
    SOUTH = 2
    WEST = 3

    @property
    def dx(self) -> int:
        return _DELTAS[self][0]

    @property
    def dy(self) -> int:
        return _DELTAS[self][1]

    @property
    def symbol(self) -> str:
        return 'NESW'[self]

    @classmethod
    def from_symbol(cls, symbol: str) -> 'Direction':
        return cls('NESW'.index(symbol))

    def left(self) -> 'Direction':
        return Direction((self - 1) & 3)

    def right(self) -> 'Direction':
        return Direction((self + 1) & 3)

    def behind(self) -> 'Direction':
        return Direction((self + 2) & 3)

    def is_vertical(self) -> bool:
        return self in (Direction.NORTH, Direction.SOUTH)


_DELTAS = {
    Direction.NORTH: (0, 1),
    Direction.EAST: (1, 0),
    Direction.SOUTH: (0, -1),
    Direction.WEST: (-1, 0),
}

DIRECTIONS = (Direction.NORTH, Direction.EAST, Direction.SOUTH, Direction.WEST)


def order_key(cell: Cell) -> Tuple[int, int]:
    return cell[1], cell[0]


def cell_less(a: Cell, b: Cell) -> bool:
    '''a ≺ b: lower row first, then lower column. Reflexive (a ≺ a holds).'''
    return order_key(a) <= order_key(b)


def manhattan(a: Cell, b: Cell) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def neighbor(cell: Cell, direction: Direction) -> Cell:
    dx, dy = _DELTAS[direction]
    return Cell(cell[0] + dx, cell[1] + dy)


def neighbors(cell: Cell) -> Iterator[Cell]:
    for direction in DIRECTIONS:
        yield neighbor(cell, direction)


def direction_between(a: Cell, b: Cell) -> Direction:
    '''Direction of the unit step from a to b'''
    delta = (b[0] - a[0], b[1] - a[1])
    for direction, value in _DELTAS.items():
        if value == delta:
            return direction
    raise ValueError('Cells are not adjacent: %r, %r' % (a, b))


class Field:
    '''Immutable finite set of full cells, every other cell is empty'''

    __slots__ = ('_full',)

    def __init__(self, full: Iterable[Cell] = ()):
        self._full = frozenset(Cell(*cell) for cell in full)

    @property
    def full(self) -> FrozenSet[Cell]:
        return self._full

    def __contains__(self, cell) -> bool:
        return cell in self._full

    def __iter__(self) -> Iterator[Cell]:
        return iter(sorted(self._full, key=order_key))

    def __len__(self) -> int:
        return len(self._full)

    def __eq__(self, other) -> bool:
        if isinstance(other, Field):
            return self._full == other._full
        return NotImplemented

    def __hash__(self):
        return hash(self._full)

    def __repr__(self):
        return 'Field(%r)' % list(self)

    def size(self) -> int:
        return len(self._full)

    def is_full(self, cell: Cell) -> bool:
        return cell in self._full

    def span(self) -> int:
        return span(self._full)

    def components(self) -> List[FrozenSet[Cell]]:
        return components(self._full)

    def is_connected(self) -> bool:
        return is_connected(self._full)

    def bounding_box(self) -> Tuple[int, int, int, int]:
        '''(min_x, min_y, max_x, max_y), raises EmptySetError on an empty field'''
        if not self._full:
            raise EmptySetError('Empty field has no bounding box')
        xs = [cell[0] for cell in self._full]
        ys = [cell[1] for cell in self._full]
        return min(xs), min(ys), max(xs), max(ys)


def span(cells: Collection[Cell]) -> int:
    '''Largest Manhattan distance between two cells, 0 for fewer than 2 cells

    The distance is max(|Δ(x+y)|, |Δ(x-y)|), so the extremes of both sums
    are enough.
    '''
    if len(cells) <= 1:
        return 0
    sums = [x + y for x, y in cells]
    diffs = [x - y for x, y in cells]
    return max(max(sums) - min(sums), max(diffs) - min(diffs))


def components(cells: Collection[Cell]) -> List[FrozenSet[Cell]]:
    '''4-connected classes, sorted by their ≺-minimal cell'''
    cells = cells if isinstance(cells, (set, frozenset)) else set(cells)
    seen = set()
    result = []
    for start in sorted(cells, key=order_key):
        if start in seen:
            continue
        seen.add(start)
        group = [start]
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for other in neighbors(current):
                if other in cells and other not in seen:
                    seen.add(other)
                    group.append(other)
                    queue.append(other)
        result.append(frozenset(group))
    return result


def is_connected(cells: Collection[Cell]) -> bool:
    return len(components(cells)) <= 1


class CellClass(NamedTuple):
    border: bool
    leaf: bool
    special: bool


def _full_directions(cells: AbstractSet[Cell], cell: Cell) -> List[Direction]:
    return [
        direction for direction in DIRECTIONS
        if neighbor(cell, direction) in cells
    ]


def _special_from(directions: List[Direction]) -> bool:
    if len(directions) == 1:
        return True
    vertical = any(direction.is_vertical() for direction in directions)
    horizontal = any(not direction.is_vertical() for direction in directions)
    return vertical and horizontal


def is_special(
        cells: AbstractSet[Cell],
        cell: Cell,
        assume_full: Collection[Cell] = ()) -> bool:
    '''Leaf, or two full neighbours sharing a corner

    Cells in assume_full count as full. The cell itself is not checked.
    '''
    directions = [
        direction for direction in DIRECTIONS
        if neighbor(cell, direction) in cells or
        neighbor(cell, direction) in assume_full
    ]
    return _special_from(directions)


def classify_cell(cells: AbstractSet[Cell], cell: Cell) -> CellClass:
    if cell not in cells:
        raise EmptyCellError('Cell is empty: %r' % (cell,))
    directions = _full_directions(cells, cell)
    return CellClass(
        border=len(directions) < 4,
        leaf=len(directions) == 1,
        special=_special_from(directions))


def disc_size(radius: int) -> int:
    if radius < 0:
        raise NegativeValueError('Negative radius: %r' % radius)
    return 2 * radius * radius + 2 * radius + 1


def disc_radius(size: int) -> int:
    '''Largest r with disc_size(r) <= size'''
    if size < 1:
        raise NegativeValueError('Disc size must be positive: %r' % size)
    radius = 0
    while disc_size(radius + 1) <= size:
        radius += 1
    return radius


def disc_cells(center: Cell, radius: int) -> List[Cell]:
    '''All cells within radius of center, in ≺ order'''
    if radius < 0:
        raise NegativeValueError('Negative radius: %r' % radius)
    cx, cy = center
    result = []
    for dy in range(-radius, radius + 1):
        width = radius - abs(dy)
        for dx in range(-width, width + 1):
            result.append(Cell(cx + dx, cy + dy))
    return result


def _ring_cell(center: Cell, radius: int, index: int) -> Cell:
    '''index-th cell of the ring at distance radius + 1, counterclockwise'''
    cx, cy = center
    quarter, k = divmod(index, radius + 1)
    if quarter == 0:
        return Cell(cx + radius - k, cy + 1 + k)
    if quarter == 1:
        return Cell(cx - 1 - k, cy + radius - k)
    if quarter == 2:
        return Cell(cx - radius + k, cy - 1 - k)
    if quarter == 3:
        return Cell(cx + 1 + k, cy - radius + k)
    raise IndexError('Ring index out of range: %d' % index)


def ring_cells(center: Cell, radius: int) -> List[Cell]:
    '''Cells at distance radius + 1, counterclockwise from the North
    neighbour of the East-most cell of the radius disc'''
    if radius < 0:
        raise NegativeValueError('Negative radius: %r' % radius)
    return [_ring_cell(center, radius, k) for k in range(4 * radius + 4)]


class DiscLayout:
    '''Rough disc of a given size around center

    ``cells`` lists the full disc of radius ``radius`` in ≺ order, followed by
    the counterclockwise ring prefix ``ring``.
    '''

    __slots__ = ('center', 'size', 'radius', 'ring', 'cells', '_cell_set')

    def __init__(self, center: Cell, size: int):
        if size < 1:
            raise NegativeValueError('Rough disc size must be positive: %r' %
                                     size)
        self.center = Cell(*center)
        self.size = size
        self.radius = disc_radius(size)
        self.ring = tuple(
            _ring_cell(self.center, self.radius, k)
            for k in range(size - disc_size(self.radius)))
        self.cells = tuple(disc_cells(self.center, self.radius)) + self.ring
        self._cell_set = frozenset(self.cells)

    def __contains__(self, cell) -> bool:
        return cell in self._cell_set

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        if isinstance(other, DiscLayout):
            return (self.center, self.size) == (other.center, other.size)
        return NotImplemented

    def __hash__(self):
        return hash((self.center, self.size))

    def __repr__(self):
        return 'DiscLayout(center=%r, size=%d)' % (self.center, self.size)

    @property
    def cell_set(self) -> FrozenSet[Cell]:
        return self._cell_set

    def next_cell(self) -> Cell:
        '''The unique cell e making this disc plus e a rough disc'''
        return _ring_cell(self.center, self.radius, len(self.ring))

    def grown(self) -> 'DiscLayout':
        return DiscLayout(self.center, self.size + 1)

    def span(self) -> int:
        return rough_disc_span(self.size)

    def distance_to(self, cell: Cell) -> int:
        '''Exact distance from cell to the nearest disc cell'''
        ball = manhattan(cell, self.center) - self.radius
        if ball <= 0 or cell in self._cell_set:
            return 0
        best = ball
        # ring cells are one further out than the ball, so ball - 1 is a floor
        for other in self.ring:
            distance = manhattan(cell, other)
            if distance < best:
                best = distance
                if best == ball - 1:
                    break
        return best

    def within(self, cell: Cell, limit: int) -> bool:
        '''distance_to(cell) <= limit without scanning the ring when possible'''
        ball = manhattan(cell, self.center) - self.radius
        if ball <= limit:
            return True
        if ball - 1 > limit or not self.ring:
            return False
        return any(manhattan(cell, other) <= limit for other in self.ring)

    def min_distance(self, cells: Iterable[Cell]) -> Optional[int]:
        '''Smallest distance_to over cells, None when cells is empty'''
        cells = list(cells)
        if not cells:
            return None
        balls = [
            max(0, manhattan(cell, self.center) - self.radius)
            for cell in cells
        ]
        lowest = min(balls)
        # exact distances are ball or ball - 1
        return min(
            self.distance_to(cell)
            for cell, ball in zip(cells, balls)
            if ball <= lowest + 1)

    def border(self) -> List[Cell]:
        '''Disc cells with at least one empty neighbour, in ≺ order'''
        if self.radius == 0:
            outer = [self.center]
        else:
            outer = ring_cells(self.center, self.radius - 1)
        result = [
            cell for cell in list(outer) + list(self.ring)
            if any(other not in self._cell_set for other in neighbors(cell))
        ]
        return sorted(set(result), key=order_key)


def rough_disc_cells(center: Cell, size: int) -> DiscLayout:
    return DiscLayout(center, size)


def rough_disc_span(size: int) -> int:
    '''Span of the rough disc of the given size, from its construction'''
    radius = disc_radius(size)
    extra = size - disc_size(radius)
    if extra == 0:
        return 2 * radius
    if extra <= 2 * radius + 1:
        return 2 * radius + 1
    return 2 * radius + 2


def max_size_for_span(length: int) -> int:
    '''Largest number of cells a field of span at most length can hold'''
    if length < 0:
        raise NegativeValueError('Negative span: %r' % length)
    if length % 2 == 0:
        return disc_size(length // 2)
    return disc_size((length - 1) // 2) + length


def max_size_in_span_box(length: int) -> int:
    '''Independent count of the same bound

    In rotated coordinates u = x + y, v = x - y the distance becomes
    max(|Δu|, |Δv|), and grid cells are exactly the points with u, v of
    equal parity. A set of span at most length fits in a length-by-length
    box, so the bound is the best parity count over the four box offsets.
    '''
    if length < 0:
        raise NegativeValueError('Negative span: %r' % length)

    def parity_counts(low: int) -> Tuple[int, int]:
        values = range(low, low + length + 1)
        even = sum(1 for value in values if value % 2 == 0)
        return even, len(values) - even

    best = 0
    for u_low in (0, 1):
        for v_low in (0, 1):
            u_even, u_odd = parity_counts(u_low)
            v_even, v_odd = parity_counts(v_low)
            best = max(best, u_even * v_even + u_odd * v_odd)
    return best


def minimal_span(size: int) -> int:
    '''Span of every nest with size cells'''
    if size < 1:
        raise NegativeValueError('Field size must be positive: %r' % size)
    length = 0
    while max_size_for_span(length) < size:
        length += 1
    return length


def is_nest(cells: Collection[Cell]) -> bool:
    if len(cells) == 0:
        return True
    return span(cells) == minimal_span(len(cells))


def set_distance(a: Collection[Cell], b: Collection[Cell]) -> int:
    if not a or not b:
        raise EmptySetError('Distance to an empty cell set')
    return min(manhattan(one, other) for one in a for other in b)


def gap_width(cells: AbstractSet[Cell], disc: DiscLayout,
              marker: Cell) -> Optional[int]:
    '''Largest k with every free cell at distance >= k + 1 from the disc

    Returns None when there is no full cell outside the disc and the marker.
    '''
    for cell in disc.cells:
        if cell not in cells:
            raise EmptyCellError('Disc cell is empty: %r' % (cell,))
    if marker not in cells:
        raise EmptyCellError('Marker cell is empty: %r' % (marker,))
    outside = [
        cell for cell in cells if cell != marker and cell not in disc.cell_set
    ]
    if not outside:
        return None
    return disc.min_distance(outside) - 1


def nearest(cells: Iterable[Cell], target: Cell) -> Cell:
    '''Nearest cell to target, ties broken by ≺'''
    best: Optional[Cell] = None
    best_key: Optional[Tuple[int, int, int]] = None
    for cell in cells:
        key = (manhattan(cell, target), cell[1], cell[0])
        if best_key is None or key < best_key:
            best, best_key = cell, key
    if best is None:
        raise EmptySetError('No cell to choose from')
    return best

