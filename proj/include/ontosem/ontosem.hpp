#pragma once

// Convenience header pulling in the whole library.

#include <ontosem/errors.hpp>
#include <ontosem/ontology.hpp>
#include <ontosem/logform.hpp>
#include <ontosem/lexicon.hpp>
#include <ontosem/unify.hpp>
#include <ontosem/compose.hpp>
