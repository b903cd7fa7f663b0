#!/usr/bin/env node
// Exercises a running tindbd with the stock node-postgres client:
// connect (trust and password), SELECT 1, all three spatial operators,
// an invalid query (session must survive), and a clean disconnect.
//
// usage: node pg_client_check.js TRUST_PORT PASSWORD_PORT ORE_WKT_PATH

'use strict';

const fs = require('fs');
const { Client } = require('pg');

function check(cond, label) {
  if (!cond) throw new Error('check failed: ' + label);
}

async function main() {
  const trustPort = Number(process.argv[2]);
  const passwordPort = Number(process.argv[3]);
  const oreWktPath = process.argv[4];
  if (!trustPort || !passwordPort || !oreWktPath) {
    console.error('usage: node pg_client_check.js TRUST_PORT PASSWORD_PORT ORE_WKT_PATH');
    process.exit(2);
  }
  const oreWkt = fs.readFileSync(oreWktPath, 'utf8').trim();

  // --- trust mode ---
  const client = new Client({
    host: '127.0.0.1',
    port: trustPort,
    user: 'miner',
    database: 'mine',
  });
  await client.connect();

  let r = await client.query('SELECT 1');
  check(r.rows.length === 1, 'SELECT 1 returns one row');
  check(String(r.rows[0]['?column?']) === '1', 'SELECT 1 value');

  r = await client.query('SELECT version()');
  check(typeof r.rows[0].version === 'string' && r.rows[0].version.length > 0, 'version()');

  r = await client.query('SELECT ST_Volume(geom) AS v FROM ore');
  check(r.rows.length === 1, 'one ore row');
  check(typeof r.rows[0].v === 'number' && r.rows[0].v > 0, 'positive ore volume');

  r = await client.query(
    "SELECT id, ST_3DDistance(geom, ST_GeomFromText('LINESTRING Z (500 500 0, 500 500 -400)')) AS d " +
    'FROM drills LIMIT 5');
  check(r.rows.length === 5, 'five distance rows');
  for (const row of r.rows) {
    check(typeof row.d === 'number' && row.d >= 0, 'distance is a nonnegative number');
  }

  r = await client.query(
    `SELECT id, ST_3DIntersects(geom, ST_GeomFromText('${oreWkt}')) AS hit FROM drills LIMIT 20`);
  check(r.rows.length === 20, 'twenty intersect rows');
  for (const row of r.rows) check(typeof row.hit === 'boolean', 'intersects is boolean');

  r = await client.query(
    `SELECT id FROM drills WHERE ST_3DIntersects(geom, ST_GeomFromText('${oreWkt}'))`);
  check(r.rows.length > 0, 'some drills hit the ore body');

  // Invalid SQL must error with a SQLSTATE and leave the session usable.
  let errored = false;
  try {
    await client.query('SELEC nonsense');
  } catch (err) {
    errored = true;
    check(err.code === '42601', 'syntax error SQLSTATE, got ' + err.code);
  }
  check(errored, 'invalid query raises');

  r = await client.query('SELECT 1');
  check(r.rows.length === 1, 'session survives the error');

  await client.query('BEGIN');
  await client.query('COMMIT');

  await client.end();

  // --- password mode ---
  const secured = new Client({
    host: '127.0.0.1',
    port: passwordPort,
    user: 'miner',
    database: 'mine',
    password: 'hardhat',
  });
  await secured.connect();
  r = await secured.query('SELECT 1');
  check(r.rows.length === 1, 'password-mode SELECT 1');
  await secured.end();

  const wrong = new Client({
    host: '127.0.0.1',
    port: passwordPort,
    user: 'miner',
    database: 'mine',
    password: 'wrong-password',
  });
  let rejected = false;
  try {
    await wrong.connect();
  } catch (err) {
    rejected = true;
    check(err.code === '28P01', 'auth failure SQLSTATE, got ' + err.code);
  }
  check(rejected, 'wrong password is rejected');

  console.log('client checks passed');
}

main().then(
  () => process.exit(0),
  (err) => {
    console.error(err && err.stack ? err.stack : String(err));
    process.exit(1);
  });
