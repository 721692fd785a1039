// Copyright 2026 The newslens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "newslens/changepoint.hpp"
#include "newslens/corpus.hpp"
#include "newslens/csv.hpp"
#include "newslens/domestication.hpp"
#include "newslens/entities.hpp"
#include "newslens/error.hpp"
#include "newslens/fixture.hpp"
#include "newslens/language.hpp"
#include "newslens/lexical.hpp"
#include "newslens/pipeline.hpp"
#include "newslens/retrieval.hpp"
#include "newslens/sentiment.hpp"
#include "newslens/text.hpp"
#include "newslens/time.hpp"
#include "newslens/unicode.hpp"
