'''Runtime checks of the field invariants the nest construction relies on

A field is structured when the marker sits at distance 3 from the rough disc
and 4 from the free bricks, and every free brick keeps a gap of at least 6
empty cells around the disc. It is strongly structured when, in addition, no
free component drifted farther than 7 from the disc and the robot stands on
the marker.
'''
from logging import getLogger
from typing import List, NamedTuple, Optional, Tuple

from nestbuilder.engine import World
from nestbuilder.grid import components, manhattan, nearest, span
from nestbuilder.utils import get_env_switch

__all__ = [
    'MARKER_DISC_DISTANCE',
    'MARKER_FREE_DISTANCE',
    'REQUIRED_GAP',
    'LOST_DISTANCE',
    'SHORT_SWEEP_WALK',
    'InvariantReport',
    'check_invariants',
    'monitors_enabled',
    'Monitor',
]

_logger = getLogger(__name__)

MARKER_DISC_DISTANCE = 3
MARKER_FREE_DISTANCE = 4
REQUIRED_GAP = 6
LOST_DISTANCE = 7
# smallest gap right after a search walk
FOUND_GAP = 5
# longest sweep-walk that does not count as long
SHORT_SWEEP_WALK = 2


def monitors_enabled(value: Optional[bool] = None) -> bool:
    if value is not None:
        return value
    return get_env_switch('NESTBUILDER_MONITORS', True)


class InvariantReport(NamedTuple):
    checkpoint: str
    applicable: bool
    structured: bool
    strongly_structured: bool
    lost_components: int
    gap: Optional[int]
    violations: Tuple[str, ...]


def check_invariants(world: World, checkpoint: str) -> InvariantReport:
    disc, marker = world.disc, world.marker
    if disc is None or marker is None:
        return InvariantReport(checkpoint, False, False, False, 0, None, ())

    violations = []
    if any(cell not in world.full for cell in disc.cells):
        violations.append('rough disc has an empty cell')
    if marker not in world.full:
        violations.append('marker cell %r is empty' % (marker,))
    if marker in disc:
        violations.append('marker %r lies on the rough disc' % (marker,))

    free = world.free_cells()
    gap = None
    if free:
        gap = disc.min_distance(free) - 1
    marker_free = min(manhattan(marker, cell) for cell in free) if free else None
    marker_ok = (
        disc.distance_to(marker) == MARKER_DISC_DISTANCE and
        (marker_free is None or marker_free == MARKER_FREE_DISTANCE))
    gap_ok = gap is None or gap >= REQUIRED_GAP
    lost = sum(
        1 for component in components(free)
        if not any(disc.within(cell, LOST_DISTANCE) for cell in component))

    structured = marker_ok and gap_ok and not violations
    strongly = structured and lost == 0 and world.position == marker
    return InvariantReport(
        checkpoint, True, structured, strongly, lost, gap, tuple(violations))


class Monitor:
    '''Checkpoint expectations of one build_nest run

    Disabled monitors accept every call and record nothing.
    '''

    def __init__(self, world: World, enabled: bool = True):
        self.world = world
        self.enabled = enabled
        self.reports: List[InvariantReport] = []
        self.violations: List[str] = []
        self._components_before = 0
        self._before: List[frozenset] = []
        self._walk_span = 0
        self._filled: frozenset = frozenset()

    def _fail(self, checkpoint: str, message: str) -> None:
        message = '%s: %s' % (checkpoint, message)
        _logger.warning('invariant violated at step %d, %s' %
                        (self.world.steps, message))
        self.violations.append(message)

    def _check(self, checkpoint: str) -> InvariantReport:
        report = check_invariants(self.world, checkpoint)
        self.reports.append(report)
        for message in report.violations:
            self._fail(checkpoint, message)
        self.world.note(
            'check', {
                'checkpoint': checkpoint,
                'structured': report.structured,
                'strong': report.strongly_structured,
                'lost': report.lost_components,
                'gap': report.gap,
            })
        return report

    def loop_head(self) -> None:
        if not self.enabled:
            return
        report = self._check('loop-head')
        if not report.strongly_structured:
            self._fail(
                'loop-head', 'field is not strongly structured (gap=%r, lost=%d)'
                % (report.gap, report.lost_components))
        if self.world.heavy:
            self._fail('loop-head', 'robot carries a brick')
        free = self.world.free_cells()
        self._before = components(free)
        self._components_before = len(self._before)
        if free:
            target = nearest(free, self.world.position)
            for component in self._before:
                if target in component:
                    self._walk_span = span(component)

    def after_find(self, found) -> None:
        if not self.enabled:
            return
        report = self._check('after-find')
        world = self.world
        if not world.heavy:
            self._fail('after-find', 'robot carries no brick')
        if report.gap is not None and report.gap < FOUND_GAP:
            self._fail('after-find', 'gap %d below %d' % (report.gap, FOUND_GAP))
        elif report.gap is not None and report.gap > LOST_DISTANCE:
            _logger.debug('gap %d after taking the last close brick' % report.gap)
        walk_cells = found.walk.cells()
        if len(walk_cells) - 1 > 2 * self._walk_span + 2:
            self._fail(
                'after-find', 'walk of %d cells in a component of span %d' %
                (len(walk_cells), self._walk_span))

        after = components(world.free_cells())
        before = set(self._before)
        walk = set(walk_cells)
        filled = set(found.shift.filled) if found.shift is not None else set()
        self._filled = frozenset(filled)
        points = [point.cell for point in found.walk.break_points]
        for component in after:
            if component in before or component & walk or component & filled:
                continue
            if not any(manhattan(cell, point) <= 2
                       for cell in component
                       for point in points):
                self._fail(
                    'after-switch', 'component at %r is not near a break point'
                    % (min(component),))
        if filled:
            owners = [component for component in after if component & filled]
            if len(owners) != 1:
                self._fail(
                    'after-shift',
                    'shifted bricks lie in %d components' % len(owners))

    def after_return(self) -> None:
        if not self.enabled:
            return
        report = self._check('after-return')
        world = self.world
        if world.position != world.marker:
            self._fail('after-return', 'robot is not at the marker')
        if not world.heavy:
            self._fail('after-return', 'robot carries no brick')
        if report.lost_components:
            self._fail('after-return',
                       '%d lost components' % report.lost_components)
        count = len(components(world.free_cells()))
        if count > self._components_before:
            self._fail(
                'after-return', '%d free components, %d before the walk' %
                (count, self._components_before))

    def after_sweep(self, report) -> None:
        '''At most one brick placed by the last shifting is carried farther
        than SHORT_SWEEP_WALK'''
        if not self.enabled:
            return
        long_walks = [
            length
            for cell, length in zip(report.sources, report.walk_lengths)
            if cell in self._filled and length > SHORT_SWEEP_WALK
        ]
        if len(long_walks) > 1:
            self._fail(
                'after-sweep', '%d shifted bricks carried %r cells' %
                (len(long_walks), long_walks))
        self._filled = frozenset()
