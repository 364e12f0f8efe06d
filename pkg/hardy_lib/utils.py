import os
import sys


def notice(notice_text):
    # stderr keeps stdout clean for CSV/JSON payloads
    notice_style = "\x1b[0;31;45m Notice: {} \x1b[0m" if sys.stderr.isatty() else "Notice: {}"
    print(notice_style.format(notice_text), file=sys.stderr)


def mute():
    """Pool initializer silencing worker stderr."""
    sys.stderr = open(os.devnull, 'w')


def ensure_parent_dir(file_path: str):
    # Make sure that file_path can be created
    dir_ = os.path.dirname(file_path)
    if dir_ and not os.path.exists(dir_):
        os.makedirs(dir_)
