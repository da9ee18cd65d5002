#pragma once

#include <string>

namespace eventforge::vocab {

// Reused vocabularies.
inline constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kRdfSubject = "http://www.w3.org/1999/02/22-rdf-syntax-ns#subject";
inline constexpr const char* kRdfObject = "http://www.w3.org/1999/02/22-rdf-syntax-ns#object";
inline constexpr const char* kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr const char* kOwlSameAs = "http://www.w3.org/2002/07/owl#sameAs";
inline constexpr const char* kDctermsAlternative = "http://purl.org/dc/terms/alternative";
inline constexpr const char* kDctermsDescription = "http://purl.org/dc/terms/description";
inline constexpr const char* kDctermsCreated = "http://purl.org/dc/terms/created";
inline constexpr const char* kDctermsLanguage = "http://purl.org/dc/terms/language";
inline constexpr const char* kVoidDataset = "http://rdfs.org/ns/void#Dataset";
inline constexpr const char* kVoidTriples = "http://rdfs.org/ns/void#triples";
inline constexpr const char* kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";

// Simple Event Model.
inline constexpr const char* kSemCore = "http://semanticweb.cs.vu.nl/2009/11/sem/Core";
inline constexpr const char* kSemEvent = "http://semanticweb.cs.vu.nl/2009/11/sem/Event";
inline constexpr const char* kSemPlace = "http://semanticweb.cs.vu.nl/2009/11/sem/Place";
inline constexpr const char* kSemActor = "http://semanticweb.cs.vu.nl/2009/11/sem/Actor";
inline constexpr const char* kSemHasPlace = "http://semanticweb.cs.vu.nl/2009/11/sem/hasPlace";
inline constexpr const char* kSemHasBeginTimeStamp =
    "http://semanticweb.cs.vu.nl/2009/11/sem/hasBeginTimeStamp";
inline constexpr const char* kSemHasEndTimeStamp =
    "http://semanticweb.cs.vu.nl/2009/11/sem/hasEndTimeStamp";
inline constexpr const char* kSemRoleType = "http://semanticweb.cs.vu.nl/2009/11/sem/roleType";

// Event and place hierarchy properties.
inline constexpr const char* kSoHasSubEvent = "http://schema.org/hasSubEvent";
inline constexpr const char* kSoContainedInPlace = "http://schema.org/containedInPlace";
inline constexpr const char* kDboPreviousEvent = "http://dbpedia.org/ontology/previousEvent";
inline constexpr const char* kDboNextEvent = "http://dbpedia.org/ontology/nextEvent";

// Project schema terms, relative to the configured base IRI.
struct Schema {
    std::string base;  // e.g. "http://eventforge.example.org"

    std::string schema_ns() const { return base + "/schema/"; }
    std::string resource_ns() const { return base + "/resource/"; }
    std::string graph_ns() const { return base + "/graph/"; }

    std::string relation_class() const { return schema_ns() + "Relation"; }
    std::string links() const { return schema_ns() + "links"; }
    std::string mentions() const { return schema_ns() + "mentions"; }
    std::string extracted_from() const { return schema_ns() + "extractedFrom"; }
    // Inverse sub-event marker accepted in mapping tables: a relation
    // (child, p, parent) mapped to subEventOf is normalized to
    // (parent, hasSubEvent, child).
    std::string sub_event_of() const { return schema_ns() + "subEventOf"; }
};

inline constexpr const char* kDefaultBaseIri = "http://eventforge.example.org";

}  // namespace eventforge::vocab
