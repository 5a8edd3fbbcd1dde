'''Hand-drawn instances

``staircase`` is a 26-brick component whose search walk from its South-most
brick (0,0) runs through six segments and six break points. The walk goes
North to (0,2), West to (-5,2), North to (-5,4), West to (-6,4), North to
(-6,5) and West to (-14,5). The six extra bricks sit next to it at (-3,1),
(-4,1), (-7,4), (-9,4), (-10,4) and (-14,4).
'''
from typing import Callable, Dict, List, Optional

from nestbuilder.engine import World
from nestbuilder.errors import UnknownFixture
from nestbuilder.grid import Cell, DiscLayout
from nestbuilder.instances import InstanceSpec, gen_line, make_instance, parse_instance
from nestbuilder.trace import Trace

__all__ = [
    'STAIRCASE_WALK',
    'STAIRCASE_EXTRA',
    'STAIRCASE_DISC_CENTER',
    'STAIRCASE_MARKER',
    'fixture',
    'fixture_names',
    'staircase_world',
]

STAIRCASE_WALK = (
    (Cell(0, 0), Cell(0, 1), Cell(0, 2)) +
    tuple(Cell(-x, 2) for x in range(1, 6)) +
    (Cell(-5, 3), Cell(-5, 4), Cell(-6, 4), Cell(-6, 5)) +
    tuple(Cell(-x, 5) for x in range(7, 15)))
STAIRCASE_EXTRA = (
    Cell(-3, 1),
    Cell(-4, 1),
    Cell(-7, 4),
    Cell(-9, 4),
    Cell(-10, 4),
    Cell(-14, 4),
)
# a one-brick disc and its marker South of the staircase, gap of width 6
STAIRCASE_DISC_CENTER = Cell(0, -7)
STAIRCASE_MARKER = Cell(0, -4)

_DRAWINGS = {
    'plus': '''\
.#.
#S#
.#.
''',
    'L-shape': '''\
#...
#...
#...
S###
''',
    'spiral': '''\
#########
#.......#
#.#####.#
#.#...#.#
#.#.#.#.#
#.#.###.#
#.#.....#
#.#######
S
''',
    'comb': '''\
#.#.#.#
#.#.#.#
S######
''',
}


def _staircase() -> InstanceSpec:
    return make_instance(
        STAIRCASE_WALK + STAIRCASE_EXTRA,
        start=STAIRCASE_WALK[0],
        label='staircase',
        family='fixture')


def _drawn(name: str) -> Callable[[], InstanceSpec]:

    def build() -> InstanceSpec:
        return parse_instance(
            '# label: %s\n# family: fixture\n%s' % (name, _DRAWINGS[name]))

    return build


_FIXTURES: Dict[str, Callable[[], InstanceSpec]] = {
    'staircase': _staircase,
}
_FIXTURES.update((name, _drawn(name)) for name in _DRAWINGS)
_ALIASES = {'fig2-staircase': 'staircase'}
_LINE_PREFIX = 'line-'


def fixture_names() -> List[str]:
    return sorted(_FIXTURES) + [_LINE_PREFIX + 'k']


def fixture(name: str) -> InstanceSpec:
    name = _ALIASES.get(name, name)
    if name.startswith(_LINE_PREFIX):
        length = name[len(_LINE_PREFIX):]
        if length.isdigit() and int(length) > 0:
            return gen_line(int(length))
    try:
        build = _FIXTURES[name]
    except KeyError:
        raise UnknownFixture(
            'Unknown fixture %r, choose from %s' %
            (name, ', '.join(fixture_names())))
    return build()


def staircase_world(trace: Optional[Trace] = None) -> World:
    '''The staircase as the only free component of a structured field,
    robot empty-handed on the marker'''
    cells = list(STAIRCASE_WALK + STAIRCASE_EXTRA)
    cells.extend([STAIRCASE_DISC_CENTER, STAIRCASE_MARKER])
    world = World(cells, STAIRCASE_MARKER, trace=trace)
    world.set_disc(DiscLayout(STAIRCASE_DISC_CENTER, 1))
    world.set_marker(STAIRCASE_MARKER)
    return world
