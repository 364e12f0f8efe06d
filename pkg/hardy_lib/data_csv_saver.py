from collections import abc


class DataCSVSaver:
    def __init__(self, stream, columns: abc.Iterable):
        # stream: open text handle; columns: ["col1", "col2", ...]
        self.__stream = stream
        self.__columns = tuple(columns)
        self.__line_placeholder_str = "{}" + ",{}" * (len(self.__columns) - 1) + "\n"
        self.__rows = 0

        header = self.__line_placeholder_str.format(*self.__columns)
        self.__stream.write(header)

    def append_data(self, *items):
        assert len(items) == len(self.__columns)
        # repr of a float round-trips and does not depend on locale
        line = self.__line_placeholder_str.format(*[repr(float(i)) if not isinstance(i, int) else i for i in items])
        self.__stream.write(line)
        self.__rows += 1

    @property
    def columns(self) -> tuple:
        return self.__columns

    @property
    def rows(self) -> int:
        return self.__rows
