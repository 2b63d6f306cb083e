"""Synthetic Java corpus generation for tests and benchmarks.

Methods are instantiated from a fixed set of structural templates with
fresh identifier names and literal values. Re-instantiating a template
with different names/literals yields rename-only (Type-2-style) clones;
`reformat` produces layout/comment-only (Type-1-style) variants; the
`variant` knob inserts or drops statements for near-miss pairs.

Every generated method is self-checked to parse cleanly and to avoid
one-node path merges, so reports over these corpora are identical with
path merging on or off (identical-path merges are exactly
result-preserving; one-node merges are not in general).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .descset import extract_description_set, merge_paths
from .frontend import analyze_source

_WORDS = [
    "count", "total", "index", "value", "buffer", "length", "offset", "sum",
    "item", "entry", "cursor", "limit", "bound", "acc", "delta", "size",
    "width", "height", "depth", "level", "score", "rank", "weight", "mass",
    "left", "right", "spot", "slot", "mark", "flag", "state", "phase",
]

_CALLS = [
    "process", "report", "store", "emit", "flush", "record", "publish",
    "append", "update", "refresh", "validate", "notify", "trace", "submit",
]


class Namer:
    def __init__(self, rng: random.Random, salt: str):
        self.rng = rng
        self.salt = salt
        self._cache: dict[str, str] = {}

    def var(self, slot: str) -> str:
        if slot not in self._cache:
            word = self.rng.choice(_WORDS)
            self._cache[slot] = f"{word}{self.salt}{len(self._cache)}"
        return self._cache[slot]

    def call(self, slot: str) -> str:
        key = f"call:{slot}"
        if key not in self._cache:
            self._cache[key] = self.rng.choice(_CALLS)
        return self._cache[key]

    def lit(self, lo: int = 0, hi: int = 9999) -> str:
        return str(self.rng.randint(lo, hi))


def _tpl_accumulate(n: Namer, variant: int) -> list[str]:
    a, lim, tot, cnt, i, v = (n.var(s) for s in "a lim tot cnt i v".split())
    lines = [
        f"int {tot} = {n.lit()};",
        f"int {cnt} = {n.lit(0, 3)};",
        f"for (int {i} = 0; {i} < {a}.length; {i}++) {{",
        f"    int {v} = {a}[{i}];",
        f"    if ({v} > {lim}) {{",
        f"        {tot} = {tot} + {v};",
        f"        {cnt} = {cnt} + {n.lit(1, 5)};",
        f"    }} else {{",
        f"        {tot} = {tot} - {v};",
        f"        {cnt} = {lim};",
        f"        {n.call('c0')}({cnt});",
        f"    }}",
        f"}}",
        f"if ({cnt} > {n.lit(0, 2)}) {{",
        f"    {tot} = {tot} / {cnt};",
        f"    {n.call('c1')}({tot}, {cnt});",
        f"}}",
    ]
    if variant >= 1:
        lines += [f"{tot} = {tot} * {n.lit(2, 9)};", f"{n.call('c2')}({tot});"]
    if variant >= 2:
        lines[3:3] = [f"    {n.call('c3')}({i}, {a}[{i}]);"]
    lines += [f"return {tot};"]
    return lines


def _tpl_scan_matrix(n: Namer, variant: int) -> list[str]:
    m, rows, cols, r, c, best, cur = (n.var(s) for s in "m rows cols r c best cur".split())
    lines = [
        f"int {best} = {n.lit()};",
        f"int {rows} = {m}.length;",
        f"int {cols} = {m}[0].length;",
        f"for (int {r} = 0; {r} < {rows}; {r}++) {{",
        f"    for (int {c} = 0; {c} < {cols}; {c}++) {{",
        f"        int {cur} = {m}[{r}][{c}];",
        f"        if ({cur} > {best}) {{",
        f"            {best} = {cur};",
        f"            {n.call('c0')}({r}, {c});",
        f"            {n.call('c1')}({best});",
        f"        }}",
        f"    }}",
        f"    {n.call('c2')}({r});",
        f"}}",
        f"{n.call('c3')}({best}, {rows}, {cols});",
    ]
    if variant >= 1:
        lines[1:1] = [f"int {n.var('extra')} = {rows} * {cols};"]
    if variant >= 2:
        lines += [f"if ({best} < 0) {{", f"    {best} = -{best};", f"    {n.call('c4')}({best}, {rows});", f"}}"]
    lines += [f"return {best};"]
    return lines


def _tpl_stream_copy(n: Namer, variant: int) -> list[str]:
    src, dst, buf, got, total, cap = (n.var(s) for s in "src dst buf got total cap".split())
    lines = [
        f"byte[] {buf} = new byte[{n.lit(256, 8192)}];",
        f"int {got} = 0;",
        f"long {total} = 0;",
        f"try {{",
        f"    while (({got} = {src}.read({buf})) != {cap}) {{",
        f"        {dst}.write({buf}, 0, {got});",
        f"        {total} = {total} + {got};",
        f"    }}",
        f"    {dst}.flush();",
        f"}} finally {{",
        f"    {src}.close();",
        f"    {dst}.close();",
        f"    {n.call('c0')}({total});",
        f"}}",
    ]
    if variant >= 1:
        lines[2:2] = [f"{n.call('c1')}({buf}.length);"]
    if variant >= 2:
        lines += [f"if ({total} > {n.lit(10, 99)}) {{", f"    {n.call('c2')}({total});",
                  f"    {total} = 0;", f"}}"]
    lines += [f"return {total};"]
    return lines


def _tpl_dispatch(n: Namer, variant: int) -> list[str]:
    kind, out, arg = n.var("kind"), n.var("out"), n.var("arg")
    lines = [
        f"int {out} = {n.lit()};",
        f"switch ({kind}) {{",
        f"    case 1:",
        f"        {out} = {arg} + {n.lit(1, 9)};",
        f"        break;",
        f"    case 2:",
        f"        {out} = {arg} * {n.lit(2, 9)};",
        f"        {n.call('c0')}({out});",
        f"        break;",
        f"    case 3:",
        f"        {out} = {arg} - {n.lit(1, 9)};",
        f"        {n.call('c1')}({out}, {arg});",
        f"        {out} = {out} * {out};",
        f"        break;",
        f"    default:",
        f"        {n.call('c2')}({kind}, {arg}, {out});",
        f"        {out} = {kind} % {n.lit(2, 9)};",
        f"        {n.call('c5')}({out}, {kind});",
        f"        {out} = {out} + {kind};",
        f"}}",
        f"{n.call('c3')}({out});",
    ]
    if variant >= 1:
        lines += [f"{out} = {out} + {arg};"]
    if variant >= 2:
        lines[0:0] = [f"{n.call('c4')}({kind});"]
    lines += [f"return {out};"]
    return lines


def _tpl_search(n: Namer, variant: int) -> list[str]:
    hay, needle, pos, i, probe = (n.var(s) for s in "hay needle pos i probe".split())
    lines = [
        f"int {pos} = -{n.lit(1, 3)};",
        f"for (int {i} = 0; {i} < {hay}.length; {i}++) {{",
        f"    int {probe} = {hay}[{i}];",
        f"    if ({probe} == {needle}) {{",
        f"        {pos} = {i};",
        f"        {n.call('c0')}({pos}, {probe});",
        f"        break;",
        f"    }}",
        f"    if ({probe} < 0) {{",
        f"        {n.call('c1')}({i});",
        f"        {n.call('c2')}({probe}, {i});",
        f"        continue;",
        f"    }}",
        f"    {n.call('c3')}({probe});",
        f"    {n.call('c6')}({probe}, {pos});",
        f"}}",
    ]
    if variant >= 1:
        lines += [f"if ({pos} < 0) {{", f"    {n.call('c4')}({needle});",
                  f"    {pos} = {hay}.length;", f"}}"]
    if variant >= 2:
        lines[0:0] = [f"{n.call('c5')}({hay}.length, {needle});"]
    lines += [f"return {pos};"]
    return lines


def _tpl_polling(n: Namer, variant: int) -> list[str]:
    tries, max_, ok, gate, wait = (n.var(s) for s in "tries max ok gate wait".split())
    lines = [
        f"int {tries} = 0;",
        f"boolean {ok} = false;",
        f"long {wait} = {n.lit(10, 500)};",
        f"do {{",
        f"    {ok} = {gate}.poll({wait});",
        f"    {tries} = {tries} + 1;",
        f"    if ({tries} > {max_}) {{",
        f"        {n.call('c0')}({tries}, {wait});",
        f"        {wait} = {wait} * 2;",
        f"        break;",
        f"    }}",
        f"    {n.call('c1')}({tries});",
        f"}} while (!{ok});",
        f"{n.call('c2')}({ok}, {tries});",
    ]
    if variant >= 1:
        lines += [f"{wait} = {wait} + {tries};", f"{n.call('c3')}({wait});"]
    if variant >= 2:
        lines[2:2] = [f"{n.call('c4')}({max_});"]
    lines += [f"return {tries};"]
    return lines


def _tpl_builder(n: Namer, variant: int) -> list[str]:
    sb, parts, i, sep = (n.var(s) for s in "sb parts i sep".split())
    lines = [
        f"StringBuilder {sb} = new StringBuilder();",
        f"String {sep} = \"{n.lit(0, 9)}\";",
        f"{sb}.append({sep});",
        f"for (int {i} = 0; {i} < {parts}.length; {i}++) {{",
        f"    if ({i} > 0) {{",
        f"        {sb}.append({sep});",
        f"        {n.call('c0')}({i});",
        f"        {n.call('c6')}({i}, {sep});",
        f"    }}",
        f"    {sb}.append({parts}[{i}]);",
        f"}}",
        f"String {n.var('res')} = {sb}.toString();",
        f"{n.call('c1')}({n.var('res')});",
        f"{n.call('c2')}({n.var('res')}, {parts}.length);",
        f"{n.call('c3')}({sb});",
    ]
    if variant >= 1:
        lines[2:2] = [f"{sb}.append({parts}.length);"]
    if variant >= 2:
        lines += [f"if ({parts}.length == 0) {{", f"    {n.call('c4')}({sep});",
                  f"    {sb}.append({sep});", f"    {n.call('c5')}({sb}, {sep});", f"}}"]
    lines += [f"return {n.var('res')};"]
    return lines


def _tpl_histogram(n: Namer, variant: int) -> list[str]:
    data, bins, i, b, top = (n.var(s) for s in "data bins i b top".split())
    lines = [
        f"int[] {bins} = new int[{n.lit(8, 64)}];",
        f"int {top} = 0;",
        f"for (int {i} = 0; {i} < {data}.length; {i}++) {{",
        f"    int {b} = {data}[{i}] % {bins}.length;",
        f"    if ({b} < 0) {{",
        f"        {b} = {b} + {bins}.length;",
        f"        {n.call('c0')}({b}, {i});",
        f"    }}",
        f"    {bins}[{b}] = {bins}[{b}] + 1;",
        f"}}",
        f"for (int {i} = 0; {i} < {bins}.length; {i}++) {{",
        f"    if ({bins}[{i}] > {top}) {{",
        f"        {top} = {bins}[{i}];",
        f"        {n.call('c1')}({i}, {top});",
        f"    }}",
        f"}}",
        f"{n.call('c2')}({top}, {bins}.length);",
    ]
    if variant >= 1:
        lines += [f"{top} = {top} + {n.lit(1, 4)};"]
    if variant >= 2:
        lines[1:1] = [f"{n.call('c3')}({data}.length);"]
    lines += [f"return {top};"]
    return lines


TEMPLATES = [
    ("accumulate", _tpl_accumulate, "int[] %s, int %s", ("a", "lim")),
    ("scanMatrix", _tpl_scan_matrix, "int[][] %s", ("m",)),
    ("streamCopy", _tpl_stream_copy, "java.io.InputStream %s, java.io.OutputStream %s, int %s", ("src", "dst", "cap")),
    ("dispatch", _tpl_dispatch, "int %s, int %s", ("kind", "arg")),
    ("search", _tpl_search, "int[] %s, int %s", ("hay", "needle")),
    ("polling", _tpl_polling, "int %s, Object %s", ("max", "gate")),
    ("builder", _tpl_builder, "String[] %s", ("parts",)),
    ("histogram", _tpl_histogram, "int[] %s", ("data",)),
]


@dataclass
class GeneratedMethod:
    name: str
    template: str
    group: str
    text: str
    line_count: int


def render_method(
    rng: random.Random,
    template_id: int,
    method_name: str,
    salt: str,
    variant: int = 0,
) -> str:
    _tname, body_fn, params_fmt, param_slots = TEMPLATES[template_id]
    namer = Namer(rng, salt)
    params = params_fmt % tuple(namer.var(s) for s in param_slots)
    ret = "long" if template_id == 2 else ("String" if template_id == 6 else "int")
    body = body_fn(namer, variant)
    lines = [f"public static {ret} {method_name}({params}) {{"]
    lines += ["    " + ln for ln in body]
    lines.append("}")
    return "\n".join(lines)


def merge_safe(method_text: str) -> bool:
    """True when the method parses, is non-degenerate, and path merging
    collapses only byte-identical paths."""
    src = "class Check {\n" + method_text + "\n}\n"
    analyses, diagnostics = analyze_source(src, "check.java")
    if diagnostics or len(analyses) != 1:
        return False
    dset = extract_description_set(analyses[0].tree, analyses[0].fragment)
    merged = merge_paths(dset)
    return len(set(dset.paths)) == len(merged.paths)


def generate_method(
    rng: random.Random,
    template_id: int,
    method_name: str,
    group: str,
    variant: int = 0,
    require_merge_safe: bool = True,
) -> GeneratedMethod:
    for attempt in range(25):
        salt = f"_{rng.randrange(10**6)}"
        text = render_method(rng, template_id, method_name, salt, variant)
        if not require_merge_safe or merge_safe(text):
            return GeneratedMethod(
                method_name,
                TEMPLATES[template_id][0],
                group,
                text,
                text.count("\n") + 1,
            )
    raise RuntimeError(
        f"template {TEMPLATES[template_id][0]} variant {variant}: "
        "no merge-safe instantiation found"
    )


def _decoration(rng: random.Random, k: int) -> list[str]:
    """A self-contained statement block; widens the structural variety of
    generated methods (path counts and lengths)."""
    v = f"aux{k}_{rng.randrange(10**5)}"
    w = f"tmp{k}_{rng.randrange(10**5)}"
    c0, c1, c2 = (rng.choice(_CALLS) for _ in range(3))
    lit = rng.randint(1, 999)
    shape = rng.randrange(6)
    if shape == 0:
        return [f"int {v} = {lit};", f"{c0}({v});"]
    if shape == 1:
        return [
            f"int {v} = {lit};",
            f"if ({v} > {lit % 7}) {{",
            f"    {c0}({v});",
            f"    {v} = {v} * 2;",
            f"    {c1}({v}, {lit});",
            f"}}",
        ]
    if shape == 2:
        return [
            f"int {v} = 0;",
            f"for (int {w} = 0; {w} < {lit % 17 + 2}; {w}++) {{",
            f"    {v} = {v} + {w};",
            f"    {c0}({v}, {w});",
            f"}}",
            f"{c1}({v});",
        ]
    if shape == 3:
        return [
            f"int {v} = {lit};",
            f"int {w} = {lit % 13};",
            f"if ({v} > {w}) {{",
            f"    {c0}({v});",
            f"}} else {{",
            f"    {c1}({w});",
            f"    {w} = {w} + {v};",
            f"    {c2}({w}, {v});",
            f"}}",
        ]
    if shape == 4:
        return [
            f"int {v} = {lit};",
            f"while ({v} > 0) {{",
            f"    {v} = {v} / 2;",
            f"    {c0}({v});",
            f"}}",
        ]
    return [
        f"int {v} = {lit};",
        f"{c0}({v});",
        f"{v} = {v} + {lit % 11};",
        f"{c1}({v}, {lit});",
        f"{c2}({v});",
    ]


def decorate_method(method_text: str, rng: random.Random, max_blocks: int = 5) -> str:
    """Insert 0..max_blocks independent statement blocks before the
    trailing return."""
    lines = method_text.splitlines()
    insert_at = len(lines) - 2 if lines[-2].strip().startswith("return") else len(lines) - 1
    extra: list[str] = []
    for k in range(rng.randint(0, max_blocks)):
        extra.extend("    " + ln for ln in _decoration(rng, k))
    lines[insert_at:insert_at] = extra
    return "\n".join(lines)


def reformat(method_text: str, rng: random.Random) -> str:
    """Layout/comment-only variant: indentation, blank lines, comments."""
    indent = rng.choice(["  ", "    ", "\t"])
    out: list[str] = []
    for raw in method_text.splitlines():
        stripped = raw.strip()
        depth = (len(raw) - len(raw.lstrip())) // 4
        line = indent * depth + stripped
        if stripped and rng.random() < 0.25:
            out.append(indent * depth + f"// step {rng.randrange(100)}")
        if stripped.endswith(";") and rng.random() < 0.15:
            line += f" /* {rng.choice(_WORDS)} */"
        out.append(line)
        if rng.random() < 0.12:
            out.append("")
    return "\n".join(out)


def write_files(out_dir: Path, methods: list[GeneratedMethod], per_file: int, prefix: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for fidx in range(0, len(methods), per_file):
        chunk = methods[fidx : fidx + per_file]
        class_name = f"{prefix}{fidx // per_file:03d}"
        parts = [f"class {class_name} {{"]
        for m in chunk:
            parts.append("")
            parts.append(m.text)
        parts.append("}")
        (out_dir / f"{class_name}.java").write_text("\n".join(parts) + "\n", encoding="utf-8")


def generate_mixed_corpus(out_dir: str | Path, seed: int = 2024, n_methods: int = 200) -> list[GeneratedMethod]:
    """A corpus mixing rename-only clone groups, structural variants, and
    singletons across all templates."""
    rng = random.Random(seed)
    methods: list[GeneratedMethod] = []
    serial = 0

    def fresh_name(tag: str) -> str:
        nonlocal serial
        serial += 1
        return f"{tag}{serial:03d}"

    group_serial = 0
    while len(methods) < n_methods:
        template_id = rng.randrange(len(TEMPLATES))
        roll = rng.random()
        group_serial += 1
        group = f"g{group_serial:03d}"
        if roll < 0.35:
            # rename-only clone group of 2-3 members
            size = rng.randint(2, 3)
            for _ in range(size):
                methods.append(
                    generate_method(rng, template_id, fresh_name("m"), group)
                )
        elif roll < 0.6:
            # base plus structural variants at increasing distance
            methods.append(generate_method(rng, template_id, fresh_name("m"), group))
            for variant in (1, 2):
                if rng.random() < 0.8:
                    methods.append(
                        generate_method(rng, template_id, fresh_name("m"), group, variant)
                    )
        else:
            methods.append(
                generate_method(rng, template_id, fresh_name("m"), group, rng.choice([0, 1, 2]))
            )
    methods = methods[:n_methods]
    write_files(Path(out_dir), methods, per_file=10, prefix="Corpus")
    return methods


def generate_type12_suite(
    out_dir: str | Path, seed: int = 7, pairs_per_type: int = 50
) -> list[tuple[str, int, int, str, int, int, str]]:
    """Formatting-only (T1) and rename/literal-only (T2) clone pairs.

    Originals land in originals/, variants in variants/; returns ground
    truth rows (file1, start1, end1, file2, start2, end2, label).
    """
    rng = random.Random(seed)
    out = Path(out_dir)
    truth = []
    for label, offset in (("T1", 0), ("T2", pairs_per_type)):
        for k in range(pairs_per_type):
            idx = offset + k
            template_id = idx % len(TEMPLATES)
            base = generate_method(rng, template_id, f"base{idx:03d}", f"p{idx:03d}",
                                   require_merge_safe=False)
            if label == "T1":
                variant_text = reformat(base.text, rng)
            else:
                variant_text = render_method(
                    rng, template_id, f"twin{idx:03d}", f"_{rng.randrange(10**6)}"
                )
            base_file = f"originals/Base{idx:03d}.java"
            var_file = f"variants/Var{idx:03d}.java"
            for rel, name, body in ((base_file, f"Base{idx:03d}", base.text),
                                    (var_file, f"Var{idx:03d}", variant_text)):
                path = out / rel
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(f"class {name} {{\n{body}\n}}\n", encoding="utf-8")
            base_lines = base.text.count("\n") + 1
            var_lines = variant_text.count("\n") + 1
            truth.append(
                (base_file, 2, 1 + base_lines, var_file, 2, 1 + var_lines, label)
            )
    return truth


def generate_throughput_corpus(out_dir: str | Path, seed: int = 11, target_lines: int = 100_000) -> int:
    """Roughly target_lines of synthetic source; returns the actual count."""
    rng = random.Random(seed)
    methods: list[GeneratedMethod] = []
    total = 0
    serial = 0
    while total < target_lines:
        serial += 1
        template_id = rng.randrange(len(TEMPLATES))
        variant = rng.choice([0, 0, 1, 2])
        name = f"gen{serial:05d}"
        salt = f"_{rng.randrange(10**6)}"
        text = decorate_method(render_method(rng, template_id, name, salt, variant), rng)
        m = GeneratedMethod(name, TEMPLATES[template_id][0], f"t{serial:05d}", text,
                            text.count("\n") + 1)
        methods.append(m)
        total += m.line_count + 2
    write_files(Path(out_dir), methods, per_file=40, prefix="Bulk")
    return total
