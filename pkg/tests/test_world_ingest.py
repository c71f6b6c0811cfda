"""Mapping rules, world-fact ingestion, and entity merging."""

import io

import pytest

from randgen import merge_snapshot

from cogkit import ids, schema_ingest, world_ingest
from cogkit.errors import DatatypeError, ParseError, UnresolvedName
from cogkit.model import Literal
from cogkit.store import Store

SCHEMA = """\
F\tCommerce_buy\ten\tBuying.
E\tCommerce_buy\tBuyer\tcore
E\tCommerce_buy\tGoods\tcore
L\tCommerce_buy\tbuy\tv
F\tPricing\ten\tPricing.
E\tPricing\tItem\tcore
E\tPricing\tPrice\tcore
F\tAuthorship\ten\tWriting.
E\tAuthorship\tAuthor\tcore
E\tAuthorship\tWork\tcore
"""

TAXONOMY = """\
S\tthing\tanything\tthing
S\tbook\ta written work\tbook
S\tperson\ta human\tperson
H\tbook\tthing
H\tperson\tthing
"""

RULES = """\
http://x/bought\tCommerce_buy\tBuyer\tGoods\tentity
http://x/price\tPricing\tItem\tPrice\tliteral:decimal
http://x/author\tAuthorship\tWork\tAuthor\tentity
"""

WORLD = """\
wd\tQ1\tEmile\thttp://x/bought\tentity\tQ2\tHamlet\tbook
wd\tQ1\tEmile\thttp://x/likes\tentity\tQ3\tSophie
wd\tQ2\tThe Tragedy of Hamlet\thttp://x/price\tliteral\t12.50\tdecimal
db\tB1\tEmile R.\thttp://x/bought\tentity\tB2\tThe Play
"""


@pytest.fixture
def wstore():
    store = Store()
    schema_ingest.ingest_frames(store, io.StringIO(SCHEMA))
    schema_ingest.ingest_taxonomy(store, io.StringIO(TAXONOMY))
    return store


def loaded_rules(store):
    return world_ingest.load_rules(store, io.StringIO(RULES))


class TestLoadRules:
    def test_resolution_to_element_ids(self, wstore):
        rules = loaded_rules(wstore)
        assert len(rules) == 3
        rule = rules.get("http://x/bought")
        assert rule.frame == ids.frame_id("Commerce_buy")
        assert rule.subject_element == ids.element_id("Commerce_buy", "Buyer")
        assert rule.object_element == ids.element_id("Commerce_buy", "Goods")
        assert rule.object_kind == "entity" and rule.datatype == ""
        price = rules.get("http://x/price")
        assert price.object_kind == "literal" and price.datatype == "decimal"

    def test_duplicate_predicate_last_wins(self, wstore):
        rules = world_ingest.load_rules(wstore, io.StringIO(
            "http://x/p\tCommerce_buy\tBuyer\tGoods\tentity\n"
            "http://x/p\tPricing\tItem\tPrice\tliteral:string\n"
        ))
        assert len(rules) == 1
        assert rules.get("http://x/p").frame == ids.frame_id("Pricing")
        assert any("last wins" in w for w in rules.warnings)

    @pytest.mark.parametrize(
        ("line", "error"),
        [
            ("http://x/p\tGhost\tBuyer\tGoods\tentity", UnresolvedName),
            ("http://x/p\tCommerce_buy\tGhost\tGoods\tentity", UnresolvedName),
            ("http://x/p\tCommerce_buy\tBuyer\tBuyer\tentity", ParseError),
            ("http://x/p\tCommerce_buy\tBuyer\tGoods\tliteral", ParseError),
            ("http://x/p\tCommerce_buy\tBuyer\tGoods\tliteral:duration", ParseError),
            ("http://x/p\tCommerce_buy\tBuyer\tGoods\turi", ParseError),
            ("http://x/p\tCommerce_buy\tBuyer\tGoods", ParseError),
        ],
    )
    def test_bad_rules_raise(self, wstore, line, error):
        with pytest.raises(error):
            world_ingest.load_rules(wstore, io.StringIO(line + "\n"))


class TestValidateLiteral:
    @pytest.mark.parametrize(
        ("lexical", "datatype"),
        [
            ("42", "integer"), ("+42", "integer"), ("-7", "integer"),
            ("12.50", "decimal"), ("-3.5", "decimal"), ("7", "decimal"),
            ("1603-01-01T00:00:00", "dateTime"),
            ("anything at all\teven tabs", "string"),
        ],
    )
    def test_accepts(self, lexical, datatype):
        lit = world_ingest.validate_literal(lexical, datatype)
        assert lit == Literal(lexical, datatype)

    @pytest.mark.parametrize(
        ("lexical", "datatype"),
        [
            ("12.5", "integer"), ("", "integer"), ("abc", "integer"),
            ("1e5", "decimal"), (".5", "decimal"), ("7.", "decimal"),
            ("yesterday", "dateTime"),
        ],
    )
    def test_rejects(self, lexical, datatype):
        with pytest.raises(DatatypeError):
            world_ingest.validate_literal(lexical, datatype)

    def test_unsupported_datatype(self):
        with pytest.raises(DatatypeError):
            world_ingest.validate_literal("x", "duration")


class TestIngestWorld:
    def test_counts_and_skip_before_entity_creation(self, wstore):
        report = world_ingest.ingest_world(wstore, loaded_rules(wstore),
                                           io.StringIO(WORLD))
        assert report.fis_created == 3
        assert report.entities_created == 4  # Q1 Q2 B1 B2, never Q3
        assert report.entities_reused == 1
        assert report.skipped_no_rule == 1
        assert ("wd", "Q3") not in wstore.source_ref_index

    def test_entity_line_bindings_and_provenance(self, wstore):
        world_ingest.ingest_world(wstore, loaded_rules(wstore), io.StringIO(WORLD))
        quad = ("wd", "Q1", "http://x/bought", "Q2")
        fi = wstore.instances[ids.fi_id(quad)]
        assert fi.frame == ids.frame_id("Commerce_buy")
        assert fi.bindings == {
            ids.element_id("Commerce_buy", "Buyer"): ids.entity_id("wd", "Q1"),
            ids.element_id("Commerce_buy", "Goods"): ids.entity_id("wd", "Q2"),
        }
        assert fi.provenance == quad

    def test_literal_line_and_alt_label_accrual(self, wstore):
        world_ingest.ingest_world(wstore, loaded_rules(wstore), io.StringIO(WORLD))
        quad = ("wd", "Q2", "http://x/price", "12.50")
        fi = wstore.instances[ids.fi_id(quad)]
        assert fi.bindings[ids.element_id("Pricing", "Price")] == Literal("12.50", "decimal")
        hamlet = wstore.entities[ids.entity_id("wd", "Q2")]
        assert hamlet.canonical_label == "Hamlet"
        assert hamlet.alt_labels == ["The Tragedy of Hamlet"]

    def test_object_taxonomy_key_attaches_type(self, wstore):
        world_ingest.ingest_world(wstore, loaded_rules(wstore), io.StringIO(WORLD))
        hamlet = wstore.entities[ids.entity_id("wd", "Q2")]
        assert hamlet.types == {ids.taxonomy_id("book")}

    def test_duplicate_line_keeps_one_instance(self, wstore):
        line = "wd\tQ1\tEmile\thttp://x/bought\tentity\tQ2\tHamlet\n"
        world_ingest.ingest_world(wstore, loaded_rules(wstore),
                                  io.StringIO(line + line))
        assert len(wstore.instances) == 1

    @pytest.mark.parametrize(
        ("line", "error"),
        [
            ("wd\tQ1\tE\thttp://x/bought\tliteral\t5\tinteger", ParseError),
            ("wd\tQ1\tE\thttp://x/bought\tblank\tQ2\tH", ParseError),
            ("wd\tQ1\tE\thttp://x/price\tliteral\t5\tdecimal\tbook", ParseError),
            ("wd\tQ1\tE\thttp://x/price\tliteral\t5\tinteger", DatatypeError),
            ("wd\tQ1\tE\thttp://x/price\tliteral\tcheap\tdecimal", DatatypeError),
            ("wd\tQ1\tE\thttp://x/bought\tentity\tQ2\tH\tghost_type", ParseError),
            ("wd\tQ1\tE\thttp://x/bought\tentity\tQ2", ParseError),
        ],
    )
    def test_bad_world_lines_raise(self, wstore, line, error):
        with pytest.raises(error):
            world_ingest.ingest_world(wstore, loaded_rules(wstore),
                                      io.StringIO(line + "\n"))


class TestMergeEntities:
    def seeded(self, wstore):
        world_ingest.ingest_world(wstore, loaded_rules(wstore), io.StringIO(WORLD))
        return wstore

    def test_cluster_collapses_onto_smallest_id(self, wstore):
        store = self.seeded(wstore)
        report = world_ingest.merge_entities(store, io.StringIO("wd\tQ1\tdb\tB1\n"))
        assert (report.clusters, report.merged) == (1, 1)
        members = sorted([ids.entity_id("wd", "Q1"), ids.entity_id("db", "B1")])
        survivor_id, retired_id = members[0], members[1]
        survivor = store.entities[survivor_id]
        assert set(survivor.alt_labels) | {survivor.canonical_label} == {
            "Emile", "Emile R."
        }
        assert sorted(survivor.source_refs) == [("db", "B1"), ("wd", "Q1")]
        assert store.retired_entities == {retired_id}
        assert retired_id in store.entities  # kept resolvable
        assert ("sameAs", survivor_id, retired_id) in store.edges
        assert store.edges[("sameAs", survivor_id, retired_id)].provenance == "merge"
        assert store.source_ref_index[("db", "B1")] == survivor_id
        assert store.source_ref_index[("wd", "Q1")] == survivor_id

    def test_instance_bindings_point_at_survivor(self, wstore):
        store = self.seeded(wstore)
        world_ingest.merge_entities(store, io.StringIO("wd\tQ1\tdb\tB1\n"))
        bound = {
            value
            for fi in store.instances.values()
            for value in fi.bindings.values()
            if isinstance(value, str)
        }
        assert not bound & store.retired_entities

    def test_unknown_ref_skips_pair_with_warning(self, wstore):
        store = self.seeded(wstore)
        report = world_ingest.merge_entities(store, io.StringIO("zz\tnope\twd\tQ1\n"))
        assert (report.clusters, report.merged) == (0, 0)
        assert any("unknown entity" in w for w in report.warnings)

    def test_idempotent(self, wstore):
        store = self.seeded(wstore)
        pairs = "wd\tQ1\tdb\tB1\nwd\tQ2\tdb\tB2\n"
        world_ingest.merge_entities(store, io.StringIO(pairs))
        first = merge_snapshot(store)
        again = world_ingest.merge_entities(store, io.StringIO(pairs))
        assert (again.clusters, again.merged) == (0, 0)
        assert merge_snapshot(store) == first

    def test_line_order_and_column_order_invariant(self, wstore):
        forward = self.seeded(wstore)
        backward = Store()
        schema_ingest.ingest_frames(backward, io.StringIO(SCHEMA))
        schema_ingest.ingest_taxonomy(backward, io.StringIO(TAXONOMY))
        world_ingest.ingest_world(backward, loaded_rules(backward),
                                  io.StringIO(WORLD))
        world_ingest.merge_entities(forward, io.StringIO(
            "wd\tQ1\tdb\tB1\ndb\tB1\twd\tQ2\n"
        ))
        world_ingest.merge_entities(backward, io.StringIO(
            "wd\tQ2\tdb\tB1\ndb\tB1\twd\tQ1\n"
        ))
        assert merge_snapshot(forward) == merge_snapshot(backward)
