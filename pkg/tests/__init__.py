from nestbuilder.grid import Cell


def line(length: int, y: int = 0):
    return [Cell(x, y) for x in range(length)]
