from nestbuilder.engine import Observation, RobotPose, Side, Status, Weight, World, WorldState, act_move, bring, direction_away, observe, place, route, turn
from nestbuilder.fixtures import fixture, fixture_names, staircase_world
from nestbuilder.grid import Cell, Direction, DiscLayout, Field, classify_cell, components, disc_cells, gap_width, is_connected, is_nest, is_special, manhattan, max_size_for_span, minimal_span, nearest, order_key, rough_disc_cells, span
from nestbuilder.instances import InstanceSpec, gen_line, gen_random_connected, gen_rough_rectangle, gen_tree, load_instance, parse_instance, save_instance, serialize_instance
from nestbuilder.monitors import InvariantReport, Monitor, check_invariants
from nestbuilder.procedures import FindResult, NestResult, SiteChoice, SweepReport, build_nest, extend_rough_disc, find_next_brick, return_to_marker, sweep
from nestbuilder.trace import Trace, TraceEvent, read_trace, write_trace
from nestbuilder.verify import VerifyReport, verify_events, verify_files
from nestbuilder.version import VERSION as __version__
from nestbuilder.walks import BreakPoint, FreeSide, SearchWalk, Segment, StopRule, WalkMemory, WalkOrientation, c_prime_full, do_switch, reversal, return_switch_traversal, shifting, switch_traversal, traverse_segment

__all__ = [
    'Cell',
    'Direction',
    'Field',
    'DiscLayout',
    'order_key',
    'manhattan',
    'span',
    'components',
    'is_connected',
    'classify_cell',
    'is_special',
    'disc_cells',
    'rough_disc_cells',
    'max_size_for_span',
    'minimal_span',
    'is_nest',
    'gap_width',
    'nearest',
    'Status',
    'Weight',
    'Side',
    'RobotPose',
    'WorldState',
    'Observation',
    'World',
    'route',
    'observe',
    'act_move',
    'turn',
    'bring',
    'place',
    'direction_away',
    'Trace',
    'TraceEvent',
    'read_trace',
    'write_trace',
    'FreeSide',
    'WalkOrientation',
    'StopRule',
    'Segment',
    'BreakPoint',
    'SearchWalk',
    'traverse_segment',
    'do_switch',
    'WalkMemory',
    'switch_traversal',
    'shifting',
    'c_prime_full',
    'reversal',
    'return_switch_traversal',
    'InvariantReport',
    'Monitor',
    'check_invariants',
    'SweepReport',
    'SiteChoice',
    'FindResult',
    'NestResult',
    'sweep',
    'find_next_brick',
    'return_to_marker',
    'extend_rough_disc',
    'build_nest',
    'InstanceSpec',
    'parse_instance',
    'serialize_instance',
    'load_instance',
    'save_instance',
    'gen_random_connected',
    'gen_rough_rectangle',
    'gen_line',
    'gen_tree',
    'fixture',
    'fixture_names',
    'staircase_world',
    'VerifyReport',
    'verify_events',
    'verify_files',
]
