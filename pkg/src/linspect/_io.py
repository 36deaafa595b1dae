"""Atomic file writes and stable float formatting shared by report writers."""
import csv
import io
import json
import os
import tempfile


def write_atomic(path, text):
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fmt(x):
    """17 significant digits: enough to round-trip any double."""
    if isinstance(x, (bool, str)) or x is None:
        return str(x)
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.17g}"


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows):
    write_atomic(path, csv_text(header, rows))


def json_text(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_json(path, obj):
    write_atomic(path, json_text(obj))
