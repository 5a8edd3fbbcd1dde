'''Static frames of a trace

ASCII frames use the instance grammar plus ``M`` for the marker, ``o`` for
disc bricks and ``s`` for the robot on an empty cell. SVG frames draw the
same cells as squares.
'''
from logging import getLogger
from typing import Dict, Iterator, List, Tuple

from megfile import smart_makedirs, smart_open, smart_path_join

from nestbuilder.grid import Cell
from nestbuilder.instances import FULL, START, START_EMPTY, format_grid
from nestbuilder.trace import MOVE, TraceEvent, read_trace
from nestbuilder.verify import ReplayState

__all__ = [
    'MARKER',
    'DISC',
    'FORMATS',
    'trace_box',
    'ascii_frame',
    'svg_frame',
    'iter_frames',
    'render_trace',
]

_logger = getLogger(__name__)

MARKER = 'M'
DISC = 'o'
FORMATS = ('ascii', 'svg')
SVG_SCALE = 16
SVG_MARGIN = 1

_SVG_COLORS = {
    FULL: '#8d6e63',
    DISC: '#ef6c00',
    MARKER: '#1565c0',
}


def trace_box(events: List[TraceEvent]) -> Tuple[int, int, int, int]:
    '''Box holding every brick and robot position of the trace'''
    state = ReplayState(events[0])
    xs = [cell[0] for cell in state.full] + [state.position[0]]
    ys = [cell[1] for cell in state.full] + [state.position[1]]
    for event in events:
        if event.kind == MOVE:
            for x, y in (event.at, (event.at[0] + event.direction.dx,
                                    event.at[1] + event.direction.dy)):
                xs.append(x)
                ys.append(y)
    return min(xs), min(ys), max(xs), max(ys)


def _symbols(state: ReplayState) -> Dict[Cell, str]:
    symbols = {cell: FULL for cell in state.full}
    if state.disc is not None:
        for cell in state.disc.cells:
            if cell in state.full:
                symbols[cell] = DISC
    if state.marker is not None and state.marker in state.full:
        symbols[state.marker] = MARKER
    position = state.position
    symbols[position] = START if position in state.full else START_EMPTY
    return symbols


def ascii_frame(state: ReplayState, box: Tuple[int, int, int, int]) -> str:
    return '\n'.join(format_grid(_symbols(state), box)) + '\n'


def svg_frame(
        state: ReplayState, box: Tuple[int, int, int, int],
        index: int) -> str:
    min_x, min_y, max_x, max_y = box
    width = (max_x - min_x + 1 + 2 * SVG_MARGIN) * SVG_SCALE
    height = (max_y - min_y + 1 + 2 * SVG_MARGIN) * SVG_SCALE

    def corner(cell: Cell) -> Tuple[int, int]:
        x = (cell[0] - min_x + SVG_MARGIN) * SVG_SCALE
        y = (max_y - cell[1] + SVG_MARGIN) * SVG_SCALE
        return x, y

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    symbols = _symbols(state)
    for cell in sorted(symbols, key=lambda cell: (-cell[1], cell[0])):
        symbol = symbols[cell]
        x, y = corner(cell)
        if symbol in (START, START_EMPTY):
            if cell in state.full:
                lines.append(
                    f'<rect x="{x}" y="{y}" width="{SVG_SCALE}" '
                    f'height="{SVG_SCALE}" fill="{_SVG_COLORS[FULL]}"/>')
            radius = SVG_SCALE // 3
            fill = 'black' if state.heavy else 'white'
            lines.append(
                f'<circle cx="{x + SVG_SCALE // 2}" cy="{y + SVG_SCALE // 2}" '
                f'r="{radius}" fill="{fill}" stroke="black"/>')
            continue
        lines.append(
            f'<rect x="{x}" y="{y}" width="{SVG_SCALE}" height="{SVG_SCALE}" '
            f'fill="{_SVG_COLORS[symbol]}" stroke="white"/>')
    lines.append(
        f'<text x="4" y="12" font-family="monospace" font-size="10">'
        f'event {index} steps {state.steps}</text>')
    lines.append('</svg>')
    return '\n'.join(lines) + '\n'


def iter_frames(events: List[TraceEvent], every: int,
                fmt: str = 'ascii') -> Iterator[Tuple[int, str]]:
    '''(event index, frame) after the first event, every ``every`` events
    and after the last one; a frame equal to the previous one is skipped'''
    if every < 1:
        raise ValueError('Frame interval must be positive: %r' % every)
    if fmt not in FORMATS:
        raise ValueError('Unknown frame format: %r' % fmt)
    box = trace_box(events)
    state = ReplayState(events[0])
    last_index = len(events) - 1
    previous = None
    for event in events:
        if event.index > 0:
            state.apply(event)
        if not (event.index == 0 or event.index % every == 0 or
                event.index == last_index):
            continue
        # compare on the ascii picture so the svg caption does not count
        picture = ascii_frame(state, box)
        if picture == previous:
            continue
        previous = picture
        if fmt == 'svg':
            yield event.index, svg_frame(state, box, event.index)
        else:
            yield event.index, picture


def render_trace(trace_path: str, outdir: str, every: int,
                 fmt: str = 'ascii') -> List[str]:
    events = read_trace(trace_path)
    smart_makedirs(outdir, exist_ok=True)
    suffix = 'txt' if fmt == 'ascii' else 'svg'
    paths = []
    for number, (index, frame) in enumerate(iter_frames(events, every, fmt)):
        path = smart_path_join(outdir, 'frame_%04d.%s' % (number, suffix))
        with smart_open(path, 'w') as writer:
            writer.write(frame)
        paths.append(path)
        _logger.debug('frame %d after event %d' % (number, index))
    return paths
