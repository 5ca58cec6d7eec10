/**
 * Served documents frozen for tests: the worked 5-type example, the
 * disjoint two-piece family, the 3x3 square carpet, and the DOT text
 * the service exports for the worked example.  All byte-identical to
 * what the service returns for these specs.
 */

import type { ExampleRecord } from '../src/types.js';

export const FIXTURE_JSON = `{"id":"cb460e0524850f6a996330793b5472b306056cac626c52e8c02e980d9da1d24e","spec":{"field":{"a":"0"},"expansion":{"b":"-1","c":"2"},"maps":[{"sym":{"x":"-3/5","y":"-4/5","reflected":false},"t":[-1,-2]},{"sym":{"x":"0","y":"-1","reflected":false},"t":[-1,-4]},{"sym":{"x":"0","y":"1","reflected":false},"t":[-1,-1]},{"sym":{"x":"0","y":"-1","reflected":false},"t":[0,-3]}]},"outcome":{"kind":"graph"},"neighbor_count":5,"fli":3,"graph":{"m":4,"vertices":[{"name":"n1","linear":["-4/5","-3/5","3/5","-4/5"],"shift":["-3/5","-4/5"]},{"name":"n2","linear":["-1","0","0","-1"],"shift":["0","-3"]},{"name":"n3","linear":["-4/5","3/5","-3/5","-4/5"],"shift":["0","-1"]},{"name":"n4","linear":["-1","0","0","-1"],"shift":["1","-2"]},{"name":"n5","linear":["-1","0","0","-1"],"shift":["-1","-2"]}],"edges":[{"src":"n1","dst":"n2","label":[4,1]},{"src":"n2","dst":"n4","label":[2,2]},{"src":"n3","dst":"n2","label":[1,4]},{"src":"n4","dst":"n5","label":[2,4]},{"src":"n4","dst":"n5","label":[4,2]},{"src":"n5","dst":"n4","label":[1,1]}],"initial":[{"dst":"n1","label":[1,3]},{"dst":"n2","label":[2,3]},{"dst":"n3","label":[3,1]},{"dst":"n2","label":[3,2]},{"dst":"n4","label":[3,4]},{"dst":"n4","label":[4,3]}]},"topology":{"connected":true,"has_jordan_curve":true,"classes":["Uncountable","Uncountable","Uncountable","Uncountable","Uncountable"],"classification":"UncountableCarpet"},"dimension":{"alpha":1.7227062322935722,"beta_global":0.430676558073393,"spectral_radius":1.414213562373095,"beta_per_vertex":[0.430676558073393,0.430676558073393,0.430676558073393,0.430676558073393,0.430676558073393],"boundary_equations":[{"vertex":"n1","terms":[]},{"vertex":"n2","terms":[{"k":4,"src":"n1"},{"k":1,"src":"n3"}]},{"vertex":"n3","terms":[]},{"vertex":"n4","terms":[{"k":2,"src":"n2"},{"k":1,"src":"n5"}]},{"vertex":"n5","terms":[{"k":2,"src":"n4"},{"k":4,"src":"n4"}]}]},"stats":{"compositions":364,"pruned_far":329,"explored":22},"parent":null,"created_at":null}`;

export const CANTOR_JSON = `{"id":"8bf5fb90b2609157643b8f4734ea58dd2720bd22136a45bc52b8eee9637c5387","spec":{"field":{"a":"0"},"expansion":{"b":"0","c":"3"},"maps":[{"sym":{"x":"0","y":"1","reflected":false},"t":[0,0]},{"sym":{"x":"0","y":"1","reflected":false},"t":[2,2]}]},"outcome":{"kind":"empty"},"neighbor_count":0,"fli":0,"graph":null,"topology":{"connected":false,"has_jordan_curve":false,"classes":[],"classification":"TotallyDisconnectedOrEmpty"},"dimension":null,"stats":{"compositions":2,"pruned_far":2,"explored":0},"parent":null,"created_at":null}`;

export const CARPET_JSON = `{"id":"45e55ca6767bf3edebdbe72ad7a15653b97ccacf5bdfcbaf876bf516a1b1cb48","spec":{"field":{"a":"0"},"expansion":{"b":"0","c":"3"},"maps":[{"sym":{"x":"0","y":"1","reflected":false},"t":[0,0]},{"sym":{"x":"0","y":"1","reflected":false},"t":[0,1]},{"sym":{"x":"0","y":"1","reflected":false},"t":[0,2]},{"sym":{"x":"0","y":"1","reflected":false},"t":[1,0]},{"sym":{"x":"0","y":"1","reflected":false},"t":[1,2]},{"sym":{"x":"0","y":"1","reflected":false},"t":[2,0]},{"sym":{"x":"0","y":"1","reflected":false},"t":[2,1]},{"sym":{"x":"0","y":"1","reflected":false},"t":[2,2]}]},"outcome":{"kind":"graph"},"neighbor_count":8,"fli":12,"graph":{"m":8,"vertices":[{"name":"n1","linear":["1","0","0","1"],"shift":["0","1"]},{"name":"n2","linear":["1","0","0","1"],"shift":["1","0"]},{"name":"n3","linear":["1","0","0","1"],"shift":["0","-1"]},{"name":"n4","linear":["1","0","0","1"],"shift":["1","-1"]},{"name":"n5","linear":["1","0","0","1"],"shift":["1","1"]},{"name":"n6","linear":["1","0","0","1"],"shift":["-1","0"]},{"name":"n7","linear":["1","0","0","1"],"shift":["-1","1"]},{"name":"n8","linear":["1","0","0","1"],"shift":["-1","-1"]}],"edges":[{"src":"n1","dst":"n1","label":[3,1]},{"src":"n1","dst":"n5","label":[3,4]},{"src":"n1","dst":"n7","label":[5,1]},{"src":"n1","dst":"n1","label":[5,4]},{"src":"n1","dst":"n5","label":[5,6]},{"src":"n1","dst":"n7","label":[8,4]},{"src":"n1","dst":"n1","label":[8,6]},{"src":"n2","dst":"n2","label":[6,1]},{"src":"n2","dst":"n5","label":[6,2]},{"src":"n2","dst":"n4","label":[7,1]},{"src":"n2","dst":"n2","label":[7,2]},{"src":"n2","dst":"n5","label":[7,3]},{"src":"n2","dst":"n4","label":[8,2]},{"src":"n2","dst":"n2","label":[8,3]},{"src":"n3","dst":"n3","label":[1,3]},{"src":"n3","dst":"n4","label":[1,5]},{"src":"n3","dst":"n8","label":[4,3]},{"src":"n3","dst":"n3","label":[4,5]},{"src":"n3","dst":"n4","label":[4,8]},{"src":"n3","dst":"n8","label":[6,5]},{"src":"n3","dst":"n3","label":[6,8]},{"src":"n4","dst":"n4","label":[6,3]},{"src":"n5","dst":"n5","label":[8,1]},{"src":"n6","dst":"n6","label":[1,6]},{"src":"n6","dst":"n7","label":[1,7]},{"src":"n6","dst":"n8","label":[2,6]},{"src":"n6","dst":"n6","label":[2,7]},{"src":"n6","dst":"n7","label":[2,8]},{"src":"n6","dst":"n8","label":[3,7]},{"src":"n6","dst":"n6","label":[3,8]},{"src":"n7","dst":"n7","label":[3,6]},{"src":"n8","dst":"n8","label":[1,8]}],"initial":[{"dst":"n1","label":[1,2]},{"dst":"n2","label":[1,4]},{"dst":"n3","label":[2,1]},{"dst":"n1","label":[2,3]},{"dst":"n4","label":[2,4]},{"dst":"n5","label":[2,5]},{"dst":"n3","label":[3,2]},{"dst":"n2","label":[3,5]},{"dst":"n6","label":[4,1]},{"dst":"n7","label":[4,2]},{"dst":"n2","label":[4,6]},{"dst":"n5","label":[4,7]},{"dst":"n8","label":[5,2]},{"dst":"n6","label":[5,3]},{"dst":"n4","label":[5,7]},{"dst":"n2","label":[5,8]},{"dst":"n6","label":[6,4]},{"dst":"n1","label":[6,7]},{"dst":"n8","label":[7,4]},{"dst":"n7","label":[7,5]},{"dst":"n3","label":[7,6]},{"dst":"n1","label":[7,8]},{"dst":"n6","label":[8,5]},{"dst":"n3","label":[8,7]}]},"topology":{"connected":true,"has_jordan_curve":true,"classes":["Uncountable","Uncountable","Uncountable","Singleton","Singleton","Uncountable","Singleton","Singleton"],"classification":"UncountableCarpet"},"dimension":{"alpha":1.892789260714372,"beta_global":1.0,"spectral_radius":3.0,"beta_per_vertex":[1.0,1.0,1.0,0.0,0.0,1.0,0.0,0.0],"boundary_equations":[{"vertex":"n1","terms":[{"k":3,"src":"n1"},{"k":5,"src":"n1"},{"k":8,"src":"n1"}]},{"vertex":"n2","terms":[{"k":6,"src":"n2"},{"k":7,"src":"n2"},{"k":8,"src":"n2"}]},{"vertex":"n3","terms":[{"k":1,"src":"n3"},{"k":4,"src":"n3"},{"k":6,"src":"n3"}]},{"vertex":"n4","terms":[{"k":7,"src":"n2"},{"k":8,"src":"n2"},{"k":1,"src":"n3"},{"k":4,"src":"n3"},{"k":6,"src":"n4"}]},{"vertex":"n5","terms":[{"k":3,"src":"n1"},{"k":5,"src":"n1"},{"k":6,"src":"n2"},{"k":7,"src":"n2"},{"k":8,"src":"n5"}]},{"vertex":"n6","terms":[{"k":1,"src":"n6"},{"k":2,"src":"n6"},{"k":3,"src":"n6"}]},{"vertex":"n7","terms":[{"k":5,"src":"n1"},{"k":8,"src":"n1"},{"k":1,"src":"n6"},{"k":2,"src":"n6"},{"k":3,"src":"n7"}]},{"vertex":"n8","terms":[{"k":4,"src":"n3"},{"k":6,"src":"n3"},{"k":2,"src":"n6"},{"k":3,"src":"n6"},{"k":1,"src":"n8"}]}]},"stats":{"compositions":568,"pruned_far":512,"explored":8},"parent":null,"created_at":null}`;

export const FIXTURE_DOT = `digraph neighbors {
  rankdir=LR;
  id [shape=point, label=""];
  n1;
  n2;
  n3;
  n4;
  n5;
  id -> n1 [label="1,3", style=dashed];
  id -> n2 [label="2,3", style=dashed];
  id -> n3 [label="3,1", style=dashed];
  id -> n2 [label="3,2", style=dashed];
  id -> n4 [label="3,4", style=dashed];
  id -> n4 [label="4,3", style=dashed];
  n1 -> n2 [label="4,1"];
  n2 -> n4 [label="2,2"];
  n3 -> n2 [label="1,4"];
  n4 -> n5 [label="2,4"];
  n4 -> n5 [label="4,2"];
  n5 -> n4 [label="1,1"];
}
`;

export function fixtureRecord(): ExampleRecord {
  return JSON.parse(FIXTURE_JSON);
}

export function cantorRecord(): ExampleRecord {
  return JSON.parse(CANTOR_JSON);
}

export function carpetRecord(): ExampleRecord {
  return JSON.parse(CARPET_JSON);
}

/** The fixture as it comes back after persistence. */
export function storedFixture(): ExampleRecord {
  return { ...fixtureRecord(), created_at: '2026-08-22T05:58:00Z' };
}
