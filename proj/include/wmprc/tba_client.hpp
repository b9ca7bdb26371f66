#pragma once

#include <string>
#include <vector>

#include "wmprc/ingest.hpp"

namespace wmprc {

// Qualification matches for one event from The Blue Alliance v3 API.
// Raw responses are cached on disk keyed by event and endpoint; repeat calls
// are served from the cache without touching the network. The auth key comes
// from the TBA_AUTH_KEY environment variable unless passed explicitly.
//
// Errors: missing key -> CredentialError; HTTP 401 -> CredentialError;
// transport failure with a cold cache -> TransportError; unexpected response
// shape -> IngestError naming the field.
EventDataset fetch_event_matches(const std::string& event_key,
                                 const std::string& api_key,
                                 const std::string& cache_dir,
                                 const std::vector<std::string>& exclusions = {});

// Parses a raw TBA v3 /event/{key}/matches response into qualification
// MatchRecords. Exposed separately so recorded fixtures can be ingested.
std::vector<MatchRecord> parse_tba_matches(const std::string& json_text);

}  // namespace wmprc
