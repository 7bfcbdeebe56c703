#pragma once

// Umbrella header for the middleware ontology toolkit.

#include "mwo/error.hpp"
#include "mwo/rational.hpp"
#include "mwo/vocabulary.hpp"
#include "mwo/ontology.hpp"
#include "mwo/parser.hpp"
#include "mwo/knowledge_base.hpp"
#include "mwo/classifier.hpp"
#include "mwo/discovery.hpp"
