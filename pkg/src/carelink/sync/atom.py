"""The on-wire feed format: a fixed-shape Atom subset.

Serialization is a hand-built template because the format is bit-exact:
field order, indentation, and namespaces never vary, so two nodes can
compare feeds byte for byte. Parsing is tolerant and skips anything it
does not know.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from datetime import datetime
from typing import Optional
from xml.sax.saxutils import escape, quoteattr

from ..timeutil import from_rfc3339, to_rfc3339
from ..versioning import Version
from .feed import START_CURSOR, FeedEntry, SyncFeed, format_cursor
from .store import canonical_json

ATOM_NS = "http://www.w3.org/2005/Atom"
SYNC_NS = "urn:carelink:sync"


class MalformedFeed(Exception):
    pass


def serialize_feed(feed: SyncFeed) -> bytes:
    lines = [
        '<?xml version="1.0" encoding="utf-8"?>',
        f'<feed xmlns="{ATOM_NS}" xmlns:s="{SYNC_NS}">',
        f"  <id>{escape(feed.feed_id)}</id>",
        f"  <updated>{to_rfc3339(feed.updated_at)}</updated>",
    ]
    for e in feed.entries:
        content = canonical_json(e.content)
        lines.extend(
            [
                "  <entry>",
                f"    <id>urn:uuid:{escape(e.entry_id)}</id>",
                f"    <updated>{to_rfc3339(e.updated_at)}</updated>",
                f"    <title>{escape(e.kind)}</title>",
                f'    <content type="application/json">{escape(content)}</content>',
                f"    <s:version clock={quoteattr(str(e.version.clock))}"
                f" node={quoteattr(e.version.node)} op={quoteattr(e.op)}/>",
                "  </entry>",
            ]
        )
    lines.append("</feed>")
    lines.append("")
    return "\n".join(lines).encode("utf-8")


def _text(elem: Optional[ET.Element], what: str) -> str:
    if elem is None or elem.text is None:
        raise MalformedFeed(f"missing {what}")
    return elem.text


def _parse_entry(node: ET.Element) -> FeedEntry:
    raw_id = _text(node.find(f"{{{ATOM_NS}}}id"), "entry id")
    entry_id = raw_id[len("urn:uuid:") :] if raw_id.startswith("urn:uuid:") else raw_id
    updated = _parse_updated(_text(node.find(f"{{{ATOM_NS}}}updated"), "entry updated"))
    kind = _text(node.find(f"{{{ATOM_NS}}}title"), "entry title")
    content_el = node.find(f"{{{ATOM_NS}}}content")
    if content_el is None:
        raise MalformedFeed("missing entry content")
    version_el = node.find(f"{{{SYNC_NS}}}version")
    if version_el is None:
        raise MalformedFeed("missing sync version element")
    try:
        clock = int(version_el.attrib["clock"])
        node_id = version_el.attrib["node"]
        op = version_el.attrib["op"]
    except KeyError as exc:
        raise MalformedFeed(f"version element lacks {exc}") from None
    try:
        content = json.loads(content_el.text or "null")
    except json.JSONDecodeError as exc:
        raise MalformedFeed(f"entry content is not a document: {exc}") from None
    try:
        return FeedEntry(
            entry_id=entry_id,
            version=Version(clock, node_id),
            kind=kind,
            op=op,
            updated_at=updated,
            content=content,
        )
    except ValueError as exc:
        raise MalformedFeed(str(exc)) from None


def _parse_updated(text: str) -> datetime:
    try:
        return from_rfc3339(text)
    except ValueError as exc:
        raise MalformedFeed(f"bad timestamp: {text}") from None


def parse_feed(data: bytes) -> SyncFeed:
    try:
        root = ET.fromstring(data.decode("utf-8"))
    except (ET.ParseError, UnicodeDecodeError) as exc:
        raise MalformedFeed(str(exc)) from None
    if root.tag != f"{{{ATOM_NS}}}feed":
        raise MalformedFeed(f"root element is {root.tag}, not an Atom feed")
    feed_id = _text(root.find(f"{{{ATOM_NS}}}id"), "feed id")
    updated = _parse_updated(_text(root.find(f"{{{ATOM_NS}}}updated"), "feed updated"))
    entries = tuple(_parse_entry(n) for n in root.findall(f"{{{ATOM_NS}}}entry"))
    prefix = "urn:carelink:feed:"
    source_node = feed_id[len(prefix) :] if feed_id.startswith(prefix) else feed_id
    cursor = format_cursor(entries[-1].version) if entries else START_CURSOR
    try:
        return SyncFeed(
            feed_id=feed_id,
            source_node=source_node,
            cursor=cursor,
            updated_at=updated,
            entries=entries,
        )
    except ValueError as exc:
        raise MalformedFeed(str(exc)) from None
