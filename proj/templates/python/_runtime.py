# Copyright 2026 The NOVA Bundler Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Notebook display runtime for NOVA widgets.

Renders a bundled single-file web app into an ``<iframe srcdoc=...>`` and
delivers a JSON payload to it one way, host to widget: the payload is stored in
``window.__NOVA_PAYLOAD__`` and dispatched as a ``CustomEvent`` at window load.

Output is byte-identical to the bundler's ``render_iframe``; this file is
copied verbatim into every generated package and uses the standard library
only.
"""

import json
import math
import re
import secrets
import threading

__all__ = ["render", "show", "new_widget_id", "Widget"]

MARKER = "<!--NOVA:BOOTSTRAP-->"
PAYLOAD_GLOBAL = "__NOVA_PAYLOAD__"
EVENT_GLOBAL = "__NOVA_EVENT__"

_EVENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*\Z")
_ID_RE = re.compile(r"[0-9a-f]{8}\Z")
_RAW_TEXT = ("script", "style", "textarea", "title", "xmp", "iframe", "noembed", "noframes")
_SPACE = " \t\n\r\f"

_issued = set()
_issued_lock = threading.Lock()


def _pointer(path):
    if not path:
        return "/"
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def _check(value, path):
    if value is None or isinstance(value, (bool, str)):
        return
    if isinstance(value, int):
        return
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError("payload value at %s is not a finite number" % _pointer(path))
        return
    if isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _check(item, path + [i])
        return
    if isinstance(value, dict):
        for key, item in value.items():
            if not isinstance(key, str):
                raise TypeError("payload object key %r under %s is not a string"
                                % (key, _pointer(path)))
            _check(item, path + [key])
        return
    raise TypeError("payload value at %s (%s) is not JSON-serializable"
                    % (_pointer(path), type(value).__name__))


def serialize_payload(payload):
    """Compact JSON with <, > and & written as \\u escapes."""
    _check(payload, [])
    text = json.dumps(payload, ensure_ascii=False, separators=(",", ":"), allow_nan=False)
    return text.replace("<", "\\u003c").replace(">", "\\u003e").replace("&", "\\u0026")


def encode_payload(payload, event_name, widget_id):
    if not _EVENT_RE.match(event_name):
        raise ValueError("invalid event name %r" % (event_name,))
    if not _ID_RE.match(widget_id):
        raise ValueError("invalid widget id %r: must be 8 lowercase hex digits" % (widget_id,))
    return (
        '<script id="nova-bootstrap-' + widget_id + '">'
        "window." + PAYLOAD_GLOBAL + " = " + serialize_payload(payload) + "; "
        "window." + EVENT_GLOBAL + ' = "' + event_name + '"; '
        'window.addEventListener("load", function () { '
        'window.dispatchEvent(new CustomEvent("' + event_name + '", '
        "{ detail: window." + PAYLOAD_GLOBAL + " })); });</script>"
    )


def escape_srcdoc(html):
    return html.replace("&", "&amp;").replace('"', "&quot;")


def _parse_start_tag(html, i):
    """Returns (name, end) for the start tag at html[i] == '<', or None."""
    n = len(html)
    j = i + 1
    while j < n and html[j] not in _SPACE and html[j] not in "/>":
        j += 1
    name = html[i + 1:j].lower()
    while True:
        while j < n and html[j] in _SPACE:
            j += 1
        if j >= n:
            return None
        if html[j] == ">":
            return name, j + 1
        if html[j] == "/":
            if j + 1 < n and html[j + 1] == ">":
                return name, j + 2
            j += 1
            continue
        j += 1
        while j < n and html[j] not in _SPACE and html[j] not in "/>=":
            j += 1
        k = j
        while k < n and html[k] in _SPACE:
            k += 1
        if k < n and html[k] == "=":
            k += 1
            while k < n and html[k] in _SPACE:
                k += 1
            if k >= n:
                return None
            if html[k] in "\"'":
                close = html.find(html[k], k + 1)
                if close < 0:
                    return None
                j = close + 1
            else:
                while k < n and html[k] not in _SPACE and html[k] != ">":
                    k += 1
                j = k


def _find_end_tag(html, name, start):
    needle = "</" + name
    lower = html.lower()
    pos = start
    while True:
        pos = lower.find(needle, pos)
        if pos < 0:
            return -1
        after = pos + len(needle)
        if after >= len(html) or html[after] in _SPACE or html[after] in "/>":
            return pos
        pos = after


def _head_open_end(html):
    n = len(html)
    pos = 0
    while pos < n:
        lt = html.find("<", pos)
        if lt < 0:
            return -1
        if html.startswith("<!--", lt):
            body = lt + 4
            if html.startswith(">", body):
                pos = body + 1
            elif html.startswith("->", body):
                pos = body + 2
            else:
                ends = [e for e in (html.find("-->", body), html.find("--!>", body)) if e >= 0]
                if not ends:
                    return -1
                end = min(ends)
                pos = end + (4 if html.startswith("--!>", end) else 3)
            continue
        if html.startswith("<!", lt) or html.startswith("<?", lt) or html.startswith("</", lt):
            gt = html.find(">", lt + 2)
            if gt < 0:
                return -1
            pos = gt + 1
            continue
        if lt + 1 < n and html[lt + 1].isascii() and html[lt + 1].isalpha():
            parsed = _parse_start_tag(html, lt)
            if parsed is None:
                return -1
            name, end = parsed
            if name == "head":
                return end
            pos = end
            if name in _RAW_TEXT:
                close = _find_end_tag(html, name, pos)
                if close < 0:
                    return -1
                gt = html.find(">", close)
                pos = len(html) if gt < 0 else gt + 1
            elif name == "plaintext":
                return -1
            continue
        pos = lt + 1
    return -1


def inject_bootstrap(html, bootstrap):
    at = html.find(MARKER)
    if at >= 0:
        return html[:at] + bootstrap + html[at + len(MARKER):]
    head = _head_open_end(html)
    if head >= 0:
        return html[:head] + bootstrap + html[head:]
    return bootstrap + html


def new_widget_id(explicit=None):
    """Returns `explicit` if given, else a fresh id never issued before in this process."""
    if explicit is not None:
        if not isinstance(explicit, str) or not _ID_RE.match(explicit):
            raise ValueError("invalid widget id %r: must be 8 lowercase hex digits" % (explicit,))
        with _issued_lock:
            _issued.add(explicit)
        return explicit
    for _ in range(1024):
        candidate = "%08x" % secrets.randbits(32)
        with _issued_lock:
            if candidate not in _issued:
                _issued.add(candidate)
                return candidate
    raise RuntimeError("could not draw a fresh widget id")


def render(html, payload, event_name="novaData", width=800, height=600, widget_id=None):
    """Returns the <iframe> fragment that displays `html` with `payload` delivered to it."""
    width = int(width)
    height = int(height)
    if width < 1 or height < 1:
        raise ValueError("width and height must be at least 1 pixel")
    widget_id = new_widget_id(widget_id)
    srcdoc = escape_srcdoc(inject_bootstrap(html, encode_payload(payload, event_name, widget_id)))
    return (
        '<iframe id="nova-widget-' + widget_id + '" srcdoc="' + srcdoc + '" '
        'width="' + str(width) + '" height="' + str(height) + '" '
        'frameborder="0" style="border:none;"></iframe>'
    )


class Widget:
    """Display object: notebooks render it through its text/html representation."""

    def __init__(self, html_fragment, widget_id, width, height, name="NOVA widget"):
        self._html = html_fragment
        self.widget_id = widget_id
        self.width = width
        self.height = height
        self.name = name

    def _repr_html_(self):
        return self._html

    def __repr__(self):
        return "<%s %s (%dx%d)>" % (self.name, self.widget_id, self.width, self.height)


def show(html, payload, event_name="novaData", width=800, height=600, widget_id=None,
         name="NOVA widget"):
    widget_id = new_widget_id(widget_id)
    fragment = render(html, payload, event_name, width, height, widget_id)
    return Widget(fragment, widget_id, int(width), int(height), name)
