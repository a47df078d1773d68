#pragma once

#include "loopcert/certify.hpp"
#include "loopcert/covers.hpp"
#include "loopcert/decide.hpp"
#include "loopcert/decomposition.hpp"
#include "loopcert/error.hpp"
#include "loopcert/freeprod.hpp"
#include "loopcert/gword.hpp"
#include "loopcert/presentations.hpp"
#include "loopcert/spec_io.hpp"
#include "loopcert/witness.hpp"
