#pragma once

#include "qsl2r/types.hpp"
#include "qsl2r/scalars.hpp"
#include "qsl2r/modgen.hpp"
#include "qsl2r/algcheck.hpp"
#include "qsl2r/afield.hpp"
#include "qsl2r/paramspace.hpp"
#include "qsl2r/fieldsec.hpp"
#include "qsl2r/mackey.hpp"
#include "qsl2r/ktheory.hpp"
#include "qsl2r/io.hpp"
#include "qsl2r/parallel.hpp"
